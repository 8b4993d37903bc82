#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

const std::string kBin = SKEWTOOL_BIN;
const std::string kData = SKEWTOOL_DATA_DIR;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  static int counter = 0;
  const std::string path = "cli_out_" + std::to_string(counter++) + ".txt";
  const int raw = std::system((kBin + " " + args + " > " + path + " 2>&1").c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  r.output = ss.str();
  std::remove(path.c_str());
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("skew command prints the quarter") {
  const RunResult r = run("skew " + kData + "/plus_state.json " + kData + "/h_qubit.json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.substr(0, 5) == "0.25\n");
  CHECK(r.output.find("\"value\"") != std::string::npos);

  const RunResult t = run("skew " + kData + "/plus_state.json " + kData +
                          "/h_qubit.json --f " + kData + "/wy_table.json");
  CHECK(t.exit_code == 0);
  CHECK(t.output.substr(0, 5) == "0.25\n");

  const RunResult mixed =
      run("skew " + kData + "/mixed_state.json " + kData + "/h_qubit.json --f SLD");
  CHECK(mixed.exit_code == 0);
  CHECK(mixed.output.substr(0, 2) == "0\n");
}

TEST_CASE("input problems exit with code 2") {
  std::ofstream("cli_bad.json") << "{broken";
  CHECK(run("skew cli_bad.json " + kData + "/h_qubit.json").exit_code == 2);
  std::remove("cli_bad.json");

  CHECK(run("skew " + kData + "/does_not_exist.json " + kData + "/h_qubit.json").exit_code == 2);
  CHECK(run("verify no-such-suite --count 2").exit_code == 2);
  CHECK(run("fig1 9 3").exit_code == 2);
  CHECK(run("fig1 0 5").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("skew " + kData + "/plus_state.json " + kData + "/h_qubit.json --f WYD")
            .exit_code == 2);  // WYD without alpha
  CHECK(run("clock " + kData + "/product_scenario.json --rule sideways").exit_code == 2);
}

TEST_CASE("fig1 output is byte-stable and correct at the ends") {
  const RunResult a = run("fig1 1 12 --out cli_sweep_a.csv");
  const RunResult b = run("fig1 1 12 --out cli_sweep_b.csv");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  const std::string csv_a = slurp("cli_sweep_a.csv");
  CHECK(csv_a == slurp("cli_sweep_b.csv"));
  CHECK(csv_a.substr(0, 23) == "M,global,local_sum,gap\n");
  CHECK(csv_a.find("\n1,0,0,0\n") != std::string::npos);
  std::remove("cli_sweep_a.csv");
  std::remove("cli_sweep_b.csv");

  const RunResult one = run("fig1 1 1");
  CHECK(one.exit_code == 0);
  CHECK(one.output.find("\n1,0,0,0\n") != std::string::npos);
}

TEST_CASE("verify exits zero on a passing suite") {
  const RunResult r = run("verify axioms --seed 11 --count 20");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("clock scenarios: naive overshoot vs conservative caution") {
  const RunResult naive = run("clock " + kData + "/aberg_m4_scenario.json");
  CHECK(naive.exit_code == 0);
  CHECK(naive.output.find("\"decision\": true") != std::string::npos);
  CHECK(naive.output.find("\"sound\": false") != std::string::npos);

  const RunResult cons =
      run("clock " + kData + "/aberg_m4_scenario.json --rule conservative");
  CHECK(cons.exit_code == 0);
  CHECK(cons.output.find("\"decision\": false") != std::string::npos);
  CHECK(cons.output.find("\"sound\": true") != std::string::npos);

  for (const std::string rule : {"naive", "conservative"}) {
    const RunResult prod =
        run("clock " + kData + "/product_scenario.json --rule " + rule);
    CHECK(prod.exit_code == 0);
    CHECK(prod.output.find("\"sound\": true") != std::string::npos);
  }
}

TEST_CASE("aberg-run reports the protocol diagnostics") {
  const RunResult r = run("aberg-run --m 4 --n 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"catalytic_max_diff\"") != std::string::npos);
  CHECK(r.output.find("\"marginal_offdiagonal\": 0.37") != std::string::npos);
  CHECK(r.output.find("\"marginal_offdiagonal_quarter_convention\": 0.1875") !=
        std::string::npos);
  CHECK(run("aberg-run --m 0").exit_code == 2);
  CHECK(run("aberg-run --n 13").exit_code == 2);
}

TEST_CASE("multipartite prints the violation point") {
  const RunResult r = run("multipartite --m 8 --n-max 48");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("I_ancilla = 5.25\n") != std::string::npos);
  CHECK(r.output.find("N_star    = 41") != std::string::npos);
}
