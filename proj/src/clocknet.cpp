#include "skew/clocknet.hpp"

#include "skew/aberg.hpp"

#include <cmath>
#include <string>

namespace skew {

std::vector<Party> run_reporting(const ClockScenario& sc) {
  const std::size_t k = sc.layout.size();
  if (sc.h_list.size() != k) {
    throw validation_error("run_reporting: one local charge per party required");
  }
  if (!sc.report_bias.empty() && sc.report_bias.size() != k) {
    throw validation_error("run_reporting: report_bias must match the party count");
  }
  if (!(sc.threshold > 0.0)) {
    throw validation_error("run_reporting: threshold must be positive");
  }
  std::vector<Party> log;
  log.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    DensityMatrix marginal = partial_trace(sc.global_state, sc.layout, {j});
    double value = skew_info(marginal, sc.h_list[j], sc.f).value;
    if (!sc.report_bias.empty()) {
      value += sc.report_bias[j];
    }
    log.push_back(Party{static_cast<int>(j), std::move(marginal), sc.h_list[j], value});
  }
  return log;
}

bool decide(const std::vector<double>& reports, double threshold, DecisionRule rule,
            double scale) {
  if (reports.empty()) {
    throw validation_error("decide: no reports");
  }
  double sum = 0.0;
  for (double r : reports) {
    sum += r;
  }
  const double k = static_cast<double>(reports.size());
  switch (rule) {
    case DecisionRule::naive:
      return sum >= threshold;
    case DecisionRule::conservative:
      return sum / k >= threshold;
    case DecisionRule::scaled:
      if (!(scale > 0.0)) {
        throw validation_error("decide: scale must be positive");
      }
      return scale * sum / k >= threshold;
  }
  throw std::runtime_error("decide: unknown rule");
}

DecisionOutcome evaluate_decision(const ClockScenario& sc) {
  DecisionOutcome out;
  for (const Party& p : run_reporting(sc)) {
    out.reports.push_back(p.reported_value);
  }
  out.decision = decide(out.reports, sc.threshold, sc.rule, sc.scale);
  const Observable global_h = embed_local_observables(sc.h_list, sc.layout);
  out.actual_global = skew_info(sc.global_state, global_h, sc.f).value;
  out.sound = !out.decision || out.actual_global >= sc.threshold - 1e-10;
  return out;
}

namespace {

Observable excitation_count(int qubits) {
  const Eigen::Index dim = Eigen::Index(1) << qubits;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    h(i, i) = static_cast<double>(__builtin_popcountll(static_cast<unsigned long long>(i)));
  }
  return Observable(std::move(h));
}

}  // namespace

ClockScenario aberg_block_scenario(int m, int parties, int qubits_per_party,
                                   const MonotoneFunction& f, double threshold,
                                   DecisionRule rule, double scale) {
  if (parties < 1 || qubits_per_party < 1) {
    throw validation_error("aberg_block_scenario: party and block sizes must be >= 1");
  }
  const int n = parties * qubits_per_party;
  if (n > 14) {
    throw validation_error("aberg_block_scenario: total qubit count too large to materialize");
  }
  AbergConfig cfg;
  cfg.unitary = hadamard2();
  cfg.m = m;
  cfg.n_systems = n;
  ProtocolResult run = run_protocol(cfg);

  const Eigen::Index block_dim = Eigen::Index(1) << qubits_per_party;
  std::vector<Eigen::Index> dims(static_cast<std::size_t>(parties), block_dim);
  std::vector<Observable> hs(static_cast<std::size_t>(parties), excitation_count(qubits_per_party));
  return ClockScenario{std::move(run.system_state), SubsystemLayout(std::move(dims)),
                       std::move(hs),  threshold,   f,
                       rule,           scale,       {}};
}

std::optional<ScaledWitnessPlan> find_scaled_witness(double scale, const MonotoneFunction& f,
                                                     int max_total_qubits) {
  if (!(scale > 1.0)) {
    throw validation_error("find_scaled_witness: scale must exceed 1");
  }
  const ComplexMatrix u = hadamard2();
  for (int n = 2; n <= max_total_qubits; ++n) {
    for (int parties = 2; parties <= n; ++parties) {
      if (n % parties != 0) {
        continue;
      }
      const int b = n / parties;
      for (int m : {2, 3, 4, 8}) {
        // A block marginal equals the b-step protocol state: later steps act
        // on disjoint systems and cannot move it.
        const double block_value = protocol_global_skew(u, m, b, f);
        const double global_value = protocol_global_skew(u, m, n, f);
        if (scale * block_value > global_value + 1e-9) {
          ScaledWitnessPlan plan;
          plan.m = m;
          plan.parties = parties;
          plan.qubits_per_party = b;
          plan.block_report = block_value;
          plan.global_value = global_value;
          plan.threshold = 0.5 * (global_value + scale * block_value);
          return plan;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace skew
