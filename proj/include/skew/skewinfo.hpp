#pragma once

#include "skew/monotone.hpp"
#include "skew/qmat.hpp"

#include <string>
#include <vector>

namespace skew {

struct SkewDiagnostics {
  Eigen::Index rank_used = 0;
  double largest_discarded = 0.0;  // biggest eigenvalue treated as zero
};

struct SkewResult {
  double value = 0.0;
  std::string f_id;
  SkewDiagnostics diagnostics;
};

// Spectral evaluation: sum_{ij} w(lambda_i, lambda_j) |<i|H|j>|^2 with the
// kernel from `weight`. Eigenvalues at or below 1e-12 * lambda_max are
// treated as exact zeros.
SkewResult skew_info(const DensityMatrix& rho, const Observable& h, const MonotoneFunction& f);

// Independent trace-formula oracles, evaluated through matrix products.
double wy_direct(const DensityMatrix& rho, const Observable& h);
double wyd_direct(const DensityMatrix& rho, const Observable& h, double alpha);
double variance(const DensityMatrix& rho, const Observable& h);

struct GapResult {
  double global_value = 0.0;
  std::vector<double> local_values;
  double local_sum = 0.0;
  double gap = 0.0;  // global - sum of locals; negative means superadditivity fails
  bool weak_bound_satisfied = false;
};

GapResult superadditivity_gap(const DensityMatrix& rho, const std::vector<Observable>& locals,
                              const SubsystemLayout& layout, const MonotoneFunction& f);

struct RegisterIdentity {
  double lhs = 0.0;  // block state with a classical register
  double rhs = 0.0;  // probability-weighted sum
  double difference = 0.0;
};

// I^f(sum_k p_k rho_k ⊗ |k><k|, H ⊗ 1) = sum_k p_k I^f(rho_k, H).
RegisterIdentity register_identity_check(const std::vector<DensityMatrix>& states,
                                         const std::vector<double>& probs, const Observable& h,
                                         const MonotoneFunction& f);

}  // namespace skew
