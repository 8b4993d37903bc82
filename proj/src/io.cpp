#include "skew/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace skew {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw validation_error("cannot open '" + path + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw validation_error("cannot parse '" + path + "': " + e.what());
  }
}

namespace {

const json& require_field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw validation_error(std::string("missing field '") + key + "'");
  }
  return *it;
}

double require_number(const json& j, const char* key) {
  const json& v = require_field(j, key);
  if (!v.is_number()) {
    throw validation_error(std::string("field '") + key + "' must be a number");
  }
  return v.get<double>();
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) {
    throw validation_error("matrix payload must be an object");
  }
  const json& jd = require_field(j, "dim");
  if (!jd.is_number_integer() || jd.get<long>() < 1) {
    throw validation_error("matrix 'dim' must be a positive integer");
  }
  const Eigen::Index dim = jd.get<Eigen::Index>();
  const json& entries = require_field(j, "entries");
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(dim * dim)) {
    throw validation_error("matrix 'entries' must hold dim^2 [re, im] pairs");
  }
  ComplexMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const json& e = entries[static_cast<std::size_t>(r * dim + c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw validation_error("matrix entries must be [re, im] pairs");
      }
      m(r, c) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw validation_error("matrix_to_json: matrix must be square");
  }
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

MonotoneFunction monotone_from_json(const json& j) {
  if (!j.is_object()) {
    throw validation_error("monotone table payload must be an object");
  }
  const json& name = require_field(j, "name");
  if (!name.is_string()) {
    throw validation_error("table 'name' must be a string");
  }
  const double f0 = require_number(j, "f0");
  const json& samples = require_field(j, "samples");
  if (!samples.is_array() || samples.size() < 2) {
    throw validation_error("table 'samples' must be an array of at least two [x, f(x)] pairs");
  }
  std::vector<std::pair<double, double>> pts;
  pts.reserve(samples.size());
  for (const json& s : samples) {
    if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number()) {
      throw validation_error("table samples must be [x, f(x)] pairs");
    }
    pts.emplace_back(s[0].get<double>(), s[1].get<double>());
  }
  return table_monotone(name.get<std::string>(), f0, std::move(pts));
}

MonotoneFunction resolve_monotone(const std::string& f_id, std::optional<double> alpha) {
  if (f_id == "WY" || f_id == "SLD" || f_id == "WYD") {
    return builtin_monotone(f_id, alpha);
  }
  if (f_id.size() > 5 && f_id.substr(f_id.size() - 5) == ".json") {
    return monotone_from_json(load_json_file(f_id));
  }
  throw validation_error("unknown monotone function '" + f_id +
                         "' (expected WY, SLD, WYD, or a .json table path)");
}

ClockScenario scenario_from_json(const json& j) {
  if (!j.is_object()) {
    throw validation_error("scenario payload must be an object");
  }
  const json& jl = require_field(j, "layout");
  if (!jl.is_array() || jl.empty()) {
    throw validation_error("scenario 'layout' must be a non-empty array");
  }
  std::vector<Eigen::Index> dims;
  for (const json& d : jl) {
    if (!d.is_number_integer() || d.get<long>() < 1) {
      throw validation_error("scenario 'layout' entries must be positive integers");
    }
    dims.push_back(d.get<Eigen::Index>());
  }
  SubsystemLayout layout(std::move(dims));

  DensityMatrix state(matrix_from_json(require_field(j, "global_state")));
  if (state.dim() != layout.total_dim()) {
    throw validation_error("scenario 'global_state' does not match 'layout'");
  }

  const json& jh = require_field(j, "H_list");
  if (!jh.is_array() || jh.size() != layout.size()) {
    throw validation_error("scenario 'H_list' must hold one matrix per subsystem");
  }
  std::vector<Observable> hs;
  for (const json& h : jh) {
    hs.emplace_back(matrix_from_json(h));
  }

  const double threshold = require_number(j, "threshold");

  const json& jf = require_field(j, "f_id");
  if (!jf.is_string()) {
    throw validation_error("scenario 'f_id' must be a string");
  }
  std::optional<double> alpha;
  if (j.contains("alpha")) {
    alpha = require_number(j, "alpha");
  }
  MonotoneFunction f = resolve_monotone(jf.get<std::string>(), alpha);

  const json& jr = require_field(j, "rule");
  DecisionRule rule;
  double scale = 1.0;
  if (jr == "naive") {
    rule = DecisionRule::naive;
  } else if (jr == "conservative") {
    rule = DecisionRule::conservative;
  } else if (jr == "scaled") {
    rule = DecisionRule::scaled;
    scale = require_number(j, "scale");
  } else {
    throw validation_error("scenario 'rule' must be naive, conservative, or scaled");
  }

  std::vector<double> bias;
  if (j.contains("report_bias")) {
    const json& jb = j["report_bias"];
    if (!jb.is_array() || jb.size() != layout.size()) {
      throw validation_error("scenario 'report_bias' must hold one number per subsystem");
    }
    for (const json& b : jb) {
      if (!b.is_number()) {
        throw validation_error("scenario 'report_bias' entries must be numbers");
      }
      bias.push_back(b.get<double>());
    }
  }

  return ClockScenario{std::move(state), std::move(layout), std::move(hs), threshold,
                       std::move(f),     rule,              scale,         std::move(bias)};
}

json outcome_to_json(const DecisionOutcome& out) {
  return json{{"decision", out.decision},
              {"reports", out.reports},
              {"actual_global", out.actual_global},
              {"sound", out.sound}};
}

std::string format_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "M,global,local_sum,gap\n";
  for (const SweepRow& r : rows) {
    os << r.m << ',' << format_sig(r.global_value) << ',' << format_sig(r.local_sum) << ','
       << format_sig(r.gap) << '\n';
  }
  return os.str();
}

}  // namespace skew
