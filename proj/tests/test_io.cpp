#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skew/io.hpp"
#include "skew/skewinfo.hpp"

#include <cstdio>
#include <fstream>
#include <string>

using namespace skew;

namespace {

const std::string kData = SKEWTOOL_DATA_DIR;

std::string temp_file(const std::string& body) {
  static int counter = 0;
  const std::string path = "io_test_tmp_" + std::to_string(counter++) + ".json";
  std::ofstream os(path);
  os << body;
  return path;
}

}  // namespace

TEST_CASE("bundled matrix fixtures load and validate") {
  const ComplexMatrix plus = matrix_from_json(load_json_file(kData + "/plus_state.json"));
  CHECK(plus.rows() == 2);
  CHECK(plus(0, 1).real() == 0.5);
  const DensityMatrix rho{plus};
  const ComplexMatrix h = matrix_from_json(load_json_file(kData + "/h_qubit.json"));
  CHECK(skew_info(rho, Observable(h), builtin_monotone("WY")).value ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("matrix json round trip") {
  ComplexMatrix m(2, 2);
  m << std::complex<double>(0.5, 0), std::complex<double>(0.1, -0.2),
      std::complex<double>(0.1, 0.2), std::complex<double>(0.5, 0);
  const ComplexMatrix back = matrix_from_json(matrix_to_json(m));
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("malformed payloads raise input errors") {
  CHECK_THROWS_AS(load_json_file(kData + "/does_not_exist.json"), validation_error);

  const std::string bad = temp_file("{this is not json");
  CHECK_THROWS_AS(load_json_file(bad), validation_error);
  std::remove(bad.c_str());

  CHECK_THROWS_AS(matrix_from_json(json{{"dim", 2}, {"entries", json::array({1, 2})}}),
                  validation_error);
  CHECK_THROWS_AS(matrix_from_json(json{{"dim", 0}, {"entries", json::array()}}),
                  validation_error);
  json wrong_len{{"dim", 2}, {"entries", json::array()}};
  for (int i = 0; i < 3; ++i) {
    wrong_len["entries"].push_back(json::array({0.0, 0.0}));
  }
  CHECK_THROWS_AS(matrix_from_json(wrong_len), validation_error);
}

TEST_CASE("monotone resolution") {
  CHECK(resolve_monotone("WY", std::nullopt).id() == "WY");
  CHECK(resolve_monotone("SLD", std::nullopt).id() == "SLD");
  CHECK(resolve_monotone("WYD", 0.25).id() == "WYD(0.25)");
  CHECK_THROWS_AS(resolve_monotone("WYD", std::nullopt), validation_error);
  CHECK_THROWS_AS(resolve_monotone("whatever", std::nullopt), validation_error);

  const MonotoneFunction table = resolve_monotone(kData + "/wy_table.json", std::nullopt);
  CHECK(table.f_at_zero() == 0.25);
  CHECK(table(1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("scenario parsing") {
  const ClockScenario sc = scenario_from_json(load_json_file(kData + "/aberg_m4_scenario.json"));
  CHECK(sc.layout.size() == 2);
  CHECK(sc.layout.dim(0) == 2);
  CHECK(sc.threshold == 0.152);
  CHECK(sc.rule == DecisionRule::naive);
  CHECK(sc.f.id() == "WY");
  CHECK(sc.h_list.size() == 2);
  CHECK(sc.global_state.dim() == 4);

  // scaled rule requires its scale
  json j = load_json_file(kData + "/aberg_m4_scenario.json");
  j["rule"] = "scaled";
  CHECK_THROWS_AS(scenario_from_json(j), validation_error);
  j["scale"] = 1.2;
  CHECK(scenario_from_json(j).scale == 1.2);
  j["rule"] = "sideways";
  CHECK_THROWS_AS(scenario_from_json(j), validation_error);

  json mismatched = load_json_file(kData + "/aberg_m4_scenario.json");
  mismatched["layout"] = json::array({2, 3});
  CHECK_THROWS_AS(scenario_from_json(mismatched), validation_error);
}

TEST_CASE("significant-digit formatting") {
  CHECK(format_sig(0.25) == "0.25");
  CHECK(format_sig(0.0) == "0");
  CHECK(format_sig(1.0 / 3.0) == "0.333333333333");
  CHECK(format_sig(-0.014200893608) == "-0.014200893608");
  CHECK(format_sig(1.5, 3) == "1.5");
}

TEST_CASE("sweep csv layout") {
  std::vector<SweepRow> rows{{1, 0.0, 0.0, 0.0}, {2, 0.0527864045, 0.0669872981078, -0.0142008936077}};
  const std::string csv = sweep_to_csv(rows);
  CHECK(csv.substr(0, 23) == "M,global,local_sum,gap\n");
  CHECK(csv.find("\n1,0,0,0\n") != std::string::npos);
  CHECK(csv.find("2,0.0527864045,") != std::string::npos);
}

TEST_CASE("outcome serialization carries every field") {
  DecisionOutcome out;
  out.decision = true;
  out.reports = {0.1, 0.2};
  out.actual_global = 0.15;
  out.sound = false;
  const json j = outcome_to_json(out);
  CHECK(j.at("decision").get<bool>());
  CHECK(j.at("reports").size() == 2);
  CHECK(j.at("actual_global").get<double>() == 0.15);
  CHECK_FALSE(j.at("sound").get<bool>());
}
