#pragma once

#include "skew/skewinfo.hpp"

#include <vector>

namespace skew {

// Completely positive map given by Kraus operators. Trace-preserving within
// 1e-10, or trace-nonincreasing (for instrument branches); anything else is
// rejected at construction.
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<ComplexMatrix> kraus);

  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  Eigen::Index dim_in() const { return dim_in_; }
  Eigen::Index dim_out() const { return dim_out_; }
  bool trace_preserving() const { return tp_; }

  ComplexMatrix apply_to(const ComplexMatrix& op) const;  // sum_K K op K†

 private:
  std::vector<ComplexMatrix> kraus_;
  Eigen::Index dim_in_ = 0;
  Eigen::Index dim_out_ = 0;
  bool tp_ = false;
};

// Trace-preserving application; validates the output as a state.
DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho);

struct CovarianceReport {
  bool covariant = false;
  double max_deviation = 0.0;  // worst entry over the matrix-unit basis
};

// Generator-level covariance: E(-i[H_in, B]) = -i[H_out, E(B)] for every
// matrix unit B, which is equivalent to commuting with the full one-parameter
// group. Pass threshold: 1e-9.
CovarianceReport is_covariant(const QuantumChannel& ch, const Observable& h_in,
                              const Observable& h_out);

// A collection of trace-nonincreasing branches summing to a channel.
class Instrument {
 public:
  explicit Instrument(std::vector<QuantumChannel> branches);
  const std::vector<QuantumChannel>& branches() const { return branches_; }
  Eigen::Index dim() const { return branches_.front().dim_in(); }

 private:
  std::vector<QuantumChannel> branches_;
};

// One single-Kraus branch per operator; every E_j must commute with h
// (entrywise within 1e-9) and sum_j E_j†E_j = 1 within 1e-10.
Instrument commuting_measurement(const std::vector<ComplexMatrix>& kraus, const Observable& h);

struct SelectiveMonotonicityResult {
  double before = 0.0;
  double after_avg = 0.0;  // sum_j p_j I^f(rho_j, H)
  std::vector<double> branch_probs;
  bool ok = false;  // after_avg <= before + 1e-9
};

// Every branch must individually pass is_covariant(h, h); branches with
// outcome probability <= 1e-12 are skipped.
SelectiveMonotonicityResult selective_monotonicity_check(const Instrument& inst,
                                                         const DensityMatrix& rho,
                                                         const Observable& h,
                                                         const MonotoneFunction& f);

// Kraus form of tracing out everything not in `keep`.
QuantumChannel partial_trace_channel(const SubsystemLayout& layout,
                                     const std::vector<std::size_t>& keep);

}  // namespace skew
