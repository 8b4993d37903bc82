#pragma once

#include "skew/skewinfo.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace skew {

// Truncated harmonic ladder: levels offset .. offset + window - 1, with the
// outermost levels {0, window-1} reserved as guard bands that protocol states
// must never populate.
struct LadderAncilla {
  Eigen::Index window = 0;
  long offset = 0;
  ComplexMatrix hamiltonian() const;  // diag(offset, ..., offset + window - 1)
};

// Raising shift truncated to the window: Delta^a maps |b> to |b+a>.
ComplexMatrix shift_operator(Eigen::Index window, long a);

// Uniform superposition over m consecutive levels starting at absolute label
// `support_start`.
struct EtaState {
  int m = 1;
  long support_start = 0;
  ComplexVector vector_in(const LadderAncilla& anc) const;
};

// Tr[sigma Delta^a] for a = -a_abs_max .. a_abs_max (index a + a_abs_max).
std::vector<std::complex<double>> shift_moments(const ComplexMatrix& sigma, long a_abs_max);
double eta_moment(int m, long a);  // max(m - |a|, 0) / m

ComplexMatrix hadamard2();

// V(U) = sum_{jk} U_jk |j><k| ⊗ Delta^(k-j) on system ⊗ window. Truncation
// only removes matrix elements that leave the window; every surviving element
// conserves the total integer energy, so [V, H_total] vanishes identically.
ComplexMatrix aberg_unitary(const ComplexMatrix& u, Eigen::Index window);

struct AbergConfig {
  ComplexMatrix unitary;  // d x d, unitary within 1e-9
  int m = 4;              // eta support length
  int n_systems = 1;
  std::optional<long> support_start;      // default: N(d-1) + 1
  std::optional<Eigen::Index> window;     // default: m + 2N(d-1) + 2

  Eigen::Index dim() const { return unitary.rows(); }
  Eigen::Index resolved_window() const;
  long resolved_support() const;
  void validate() const;
};

struct ProtocolResult {
  ComplexVector joint;      // pure joint state, system ⊗ ancilla, d^N * D
  DensityMatrix system_state;
  DensityMatrix ancilla_state;
  std::vector<DensityMatrix> marginals;  // one per system
  double norm_drift = 0.0;               // | ||psi|| - 1 |, must stay <= 1e-12
  double guard_amplitude = 0.0;          // largest |amplitude| on a guard level
};

// Applies V(U) once per system, left to right, from |0...0> ⊗ eta. Throws if
// a guard level is populated beyond 1e-12 or the norm drifts beyond 1e-12.
ProtocolResult run_protocol(const AbergConfig& cfg);

// Reduced system channel determined by U and the ancilla shift moments:
// out(j,m) = sum_{kl} mom(k-j+m-l) U_jk rho_kl conj(U_ml).
class ReducedChannel {
 public:
  ReducedChannel(ComplexMatrix u, std::vector<std::complex<double>> moments, long a_abs_max);
  ComplexMatrix apply_to(const ComplexMatrix& rho) const;

 private:
  ComplexMatrix u_;
  std::vector<std::complex<double>> moments_;
  long a_abs_max_;
};

ReducedChannel reduced_channel_from_state(const ComplexMatrix& u, const ComplexMatrix& sigma);

struct CatalyticReport {
  std::vector<std::complex<double>> before;  // a = -2(d-1) .. 2(d-1)
  std::vector<std::vector<std::complex<double>>> after_each_step;
  double max_diff = 0.0;
};

// Moments of the reduced ancilla state after every protocol step must equal
// the initial ones.
CatalyticReport catalytic_check(const AbergConfig& cfg);

ComplexMatrix two_qubit_closed_form(int m);

struct TwoQubitFamily {
  DensityMatrix simulated;
  ComplexMatrix closed_form;
  double max_deviation = 0.0;
};

// Two Hadamard steps at support length m; simulation and closed form must
// agree within 1e-12 (asserted).
TwoQubitFamily two_qubit_family(int m);

struct SweepRow {
  int m = 0;
  double global_value = 0.0;
  double local_sum = 0.0;
  double gap = 0.0;
};

std::vector<SweepRow> fig1_sweep(int m_min, int m_max, const MonotoneFunction& f);

// Permutation-symmetric reduction for qubit protocols started from |0...0>:
// the post-protocol system state lives in the Dicke basis, so the global
// quantities stay (n+1)-dimensional for any n.
DensityMatrix symmetric_system_state(const ComplexMatrix& u, int m, int n);
Observable symmetric_hamiltonian(int n);  // diag(0..n), excitation number
DensityMatrix symmetric_qubit_marginal(const DensityMatrix& dicke_state, int n);
double protocol_global_skew(const ComplexMatrix& u, int m, int n, const MonotoneFunction& f);

struct MultipartiteResult {
  double ancilla_value = 0.0;  // I^f of eta against the ladder Hamiltonian
  double local_value = 0.0;    // single-step marginal contribution
  bool violation_found = false;
  int n_star = 0;  // smallest N with N * local_value > ancilla_value (0 if none)
  std::vector<double> ratio_curve;  // N * local_value / ancilla_value, N = 1..n_max
};

MultipartiteResult multipartite_violation(int m, const MonotoneFunction& f, int n_max);

struct OptimalityReport {
  int parties = 0;
  int depth = 0;
  int n = 0;  // parties^depth
  int m = 0;
  std::string f_id;
  double local_sum = 0.0;
  double global_value = 0.0;
  double ancilla_value = 0.0;
  double ratio = 0.0;             // local_sum / global_value
  double ratio_vs_ancilla = 0.0;  // local_sum / ancilla_value
  double slope = 0.0;             // per-system increment of the local sum
  double max_slope_deviation = 0.0;
};

// Recursive splitting scenario: parties^depth systems run the Hadamard
// protocol; locals are per-qubit values, the global is taken on the full
// chain.
OptimalityReport optimality_witness(int parties, int depth, int m, const MonotoneFunction& f);

}  // namespace skew
