#pragma once

#include "skew/skewinfo.hpp"

#include <optional>
#include <vector>

namespace skew {

enum class DecisionRule { naive, conservative, scaled };

struct ClockScenario {
  DensityMatrix global_state;
  SubsystemLayout layout;
  std::vector<Observable> h_list;  // one conserved charge per party
  double threshold = 0.0;
  MonotoneFunction f;
  DecisionRule rule = DecisionRule::conservative;
  double scale = 1.0;                    // used by the scaled rule only
  std::vector<double> report_bias = {};  // optional additive per-party perturbation
};

struct Party {
  int id = 0;
  DensityMatrix marginal;
  Observable local_h;
  double reported_value = 0.0;
};

// Each party measures its own marginal and appends one report, in order.
std::vector<Party> run_reporting(const ClockScenario& sc);

// naive: sum >= threshold. conservative: sum/k >= threshold (sound for every
// state by the weak superadditivity bound). scaled: scale * sum / k.
bool decide(const std::vector<double>& reports, double threshold, DecisionRule rule,
            double scale = 1.0);

struct DecisionOutcome {
  bool decision = false;
  std::vector<double> reports;
  double actual_global = 0.0;
  bool sound = false;  // !decision or actual_global >= threshold - 1e-10
};

DecisionOutcome evaluate_decision(const ClockScenario& sc);

// parties x qubits_per_party ladder-protocol qubits, grouped into contiguous
// blocks of qubits_per_party; per-block charge counts excitations.
ClockScenario aberg_block_scenario(int m, int parties, int qubits_per_party,
                                   const MonotoneFunction& f, double threshold,
                                   DecisionRule rule, double scale = 1.0);

struct ScaledWitnessPlan {
  int m = 0;
  int parties = 0;
  int qubits_per_party = 0;
  double threshold = 0.0;
  double block_report = 0.0;  // per-party report in the planned scenario
  double global_value = 0.0;  // true global of the planned scenario
};

// Search the protocol family for a scenario where the scaled rule triggers
// although the true global sits below the threshold. Uses the symmetric
// reduction, so the search itself stays cheap; callers should re-validate the
// returned plan with evaluate_decision on the materialized scenario.
std::optional<ScaledWitnessPlan> find_scaled_witness(double scale, const MonotoneFunction& f,
                                                     int max_total_qubits);

}  // namespace skew
