#include "skew/aberg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace skew {

ComplexMatrix LadderAncilla::hamiltonian() const {
  ComplexMatrix h = ComplexMatrix::Zero(window, window);
  for (Eigen::Index b = 0; b < window; ++b) {
    h(b, b) = static_cast<double>(offset + b);
  }
  return h;
}

ComplexMatrix shift_operator(Eigen::Index window, long a) {
  ComplexMatrix d = ComplexMatrix::Zero(window, window);
  for (Eigen::Index b = 0; b < window; ++b) {
    const long target = b + a;
    if (target >= 0 && target < window) {
      d(target, b) = 1.0;
    }
  }
  return d;
}

ComplexVector EtaState::vector_in(const LadderAncilla& anc) const {
  if (m < 1) {
    throw validation_error("EtaState: support length must be >= 1");
  }
  const long lo = support_start - anc.offset;
  const long hi = lo + m - 1;
  if (lo < 1 || hi > anc.window - 2) {
    throw validation_error("EtaState: support touches the guard levels");
  }
  ComplexVector psi = ComplexVector::Zero(anc.window);
  const double amp = 1.0 / std::sqrt(static_cast<double>(m));
  for (long b = lo; b <= hi; ++b) {
    psi[b] = amp;
  }
  return psi;
}

std::vector<std::complex<double>> shift_moments(const ComplexMatrix& sigma, long a_abs_max) {
  if (sigma.rows() != sigma.cols()) {
    throw validation_error("shift_moments: matrix is not square");
  }
  const Eigen::Index d = sigma.rows();
  std::vector<std::complex<double>> out(static_cast<std::size_t>(2 * a_abs_max + 1));
  for (long a = -a_abs_max; a <= a_abs_max; ++a) {
    std::complex<double> s = 0.0;
    for (Eigen::Index b = 0; b < d; ++b) {
      const long col = b + a;
      if (col >= 0 && col < d) {
        s += sigma(b, col);  // Tr[sigma Delta^a] = sum_b sigma(b, b + a)
      }
    }
    out[static_cast<std::size_t>(a + a_abs_max)] = s;
  }
  return out;
}

double eta_moment(int m, long a) {
  const long drop = std::labs(a);
  return drop >= m ? 0.0 : static_cast<double>(m - drop) / static_cast<double>(m);
}

ComplexMatrix hadamard2() {
  ComplexMatrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

ComplexMatrix aberg_unitary(const ComplexMatrix& u, Eigen::Index window) {
  if (u.rows() != u.cols() || u.rows() < 2) {
    throw validation_error("aberg_unitary: control unitary must be square, dim >= 2");
  }
  const Eigen::Index d = u.rows();
  ComplexMatrix v = ComplexMatrix::Zero(d * window, d * window);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index a = 0; a < window; ++a) {
      for (Eigen::Index j = 0; j < d; ++j) {
        const Eigen::Index b = a + k - j;
        if (b >= 0 && b < window) {
          v(j * window + b, k * window + a) = u(j, k);
        }
      }
    }
  }
  return v;
}

Eigen::Index AbergConfig::resolved_window() const {
  if (window) {
    return *window;
  }
  return static_cast<Eigen::Index>(m) + 2 * n_systems * (dim() - 1) + 2;
}

long AbergConfig::resolved_support() const {
  if (support_start) {
    return *support_start;
  }
  return static_cast<long>(n_systems) * (dim() - 1) + 1;
}

void AbergConfig::validate() const {
  const Eigen::Index d = dim();
  if (unitary.rows() != unitary.cols() || d < 2) {
    throw validation_error("AbergConfig: control unitary must be square, dim >= 2");
  }
  const double unit_dev =
      (unitary.adjoint() * unitary - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (unit_dev > 1e-9) {
    throw validation_error("AbergConfig: control matrix is not unitary (deviation " +
                           std::to_string(unit_dev) + ")");
  }
  if (m < 1) {
    throw validation_error("AbergConfig: support length must be >= 1");
  }
  if (n_systems < 1) {
    throw validation_error("AbergConfig: need at least one system");
  }
  const Eigen::Index dd = resolved_window();
  const long lo = resolved_support();
  const long reach = static_cast<long>(n_systems) * (d - 1);
  if (lo - reach < 1 || lo + m - 1 + reach > dd - 2) {
    throw validation_error("AbergConfig: window cannot hold the protocol and its guard levels");
  }
}

namespace {

// Joint pure state over system^N ⊗ ancilla with index s * window + b.
class ProtocolSim {
 public:
  explicit ProtocolSim(const AbergConfig& cfg)
      : d_(cfg.dim()), n_(cfg.n_systems), window_(cfg.resolved_window()), u_(cfg.unitary) {
    cfg.validate();
    dim_s_ = 1;
    for (int i = 0; i < n_; ++i) {
      dim_s_ *= d_;
    }
    psi_ = ComplexVector::Zero(dim_s_ * window_);
    const LadderAncilla anc{window_, 0};
    const EtaState eta{cfg.m, cfg.resolved_support()};
    psi_.head(window_) = eta.vector_in(anc);  // systems all in |0>
  }

  void apply_step(int system) {
    const Eigen::Index stride = system_stride(system) * window_;
    ComplexVector next = ComplexVector::Zero(psi_.size());
    for (Eigen::Index idx = 0; idx < psi_.size(); ++idx) {
      const Eigen::Index j = (idx / stride) % d_;
      const Eigen::Index b = idx % window_;
      const Eigen::Index base = idx - j * stride;
      std::complex<double> acc = 0.0;
      for (Eigen::Index k = 0; k < d_; ++k) {
        const Eigen::Index a = b - k + j;
        if (a >= 0 && a < window_) {
          acc += u_(j, k) * psi_[base + k * stride - b + a];
        }
      }
      next[idx] = acc;
    }
    psi_ = std::move(next);
  }

  double guard_amplitude() const {
    double worst = 0.0;
    for (Eigen::Index s = 0; s < dim_s_; ++s) {
      worst = std::max(worst, std::abs(psi_[s * window_]));
      worst = std::max(worst, std::abs(psi_[s * window_ + window_ - 1]));
    }
    return worst;
  }

  double norm_drift() const { return std::abs(psi_.norm() - 1.0); }

  ComplexMatrix ancilla_matrix() const {
    ComplexMatrix sigma = ComplexMatrix::Zero(window_, window_);
    for (Eigen::Index s = 0; s < dim_s_; ++s) {
      const auto block = psi_.segment(s * window_, window_);
      sigma += block * block.adjoint();
    }
    return sigma;
  }

  ComplexMatrix system_matrix() const {
    ComplexMatrix rho = ComplexMatrix::Zero(dim_s_, dim_s_);
    for (Eigen::Index b = 0; b < window_; ++b) {
      for (Eigen::Index r = 0; r < dim_s_; ++r) {
        if (psi_[r * window_ + b] == std::complex<double>(0.0, 0.0)) {
          continue;
        }
        for (Eigen::Index c = 0; c < dim_s_; ++c) {
          rho(r, c) += psi_[r * window_ + b] * std::conj(psi_[c * window_ + b]);
        }
      }
    }
    return rho;
  }

  const ComplexVector& joint() const { return psi_; }
  Eigen::Index system_dim() const { return dim_s_; }

  void check_health(const char* stage) const {
    if (guard_amplitude() > 1e-12) {
      throw std::runtime_error(std::string("run_protocol: guard level populated after ") + stage);
    }
    if (norm_drift() > 1e-12) {
      throw std::runtime_error(std::string("run_protocol: norm drifted after ") + stage);
    }
  }

 private:
  Eigen::Index system_stride(int system) const {
    Eigen::Index s = 1;
    for (int i = system + 1; i < n_; ++i) {
      s *= d_;
    }
    return s;
  }

  Eigen::Index d_;
  int n_;
  Eigen::Index window_;
  ComplexMatrix u_;
  Eigen::Index dim_s_;
  ComplexVector psi_;
};

}  // namespace

ProtocolResult run_protocol(const AbergConfig& cfg) {
  ProtocolSim sim(cfg);
  for (int i = 0; i < cfg.n_systems; ++i) {
    sim.apply_step(i);
    sim.check_health(("step " + std::to_string(i + 1)).c_str());
  }
  std::vector<Eigen::Index> dims(static_cast<std::size_t>(cfg.n_systems), cfg.dim());
  const SubsystemLayout layout(dims);
  DensityMatrix system_state{ComplexMatrix(sim.system_matrix())};
  std::vector<DensityMatrix> marginals;
  marginals.reserve(static_cast<std::size_t>(cfg.n_systems));
  for (int i = 0; i < cfg.n_systems; ++i) {
    marginals.push_back(partial_trace(system_state, layout, {static_cast<std::size_t>(i)}));
  }
  return ProtocolResult{sim.joint(),
                        std::move(system_state),
                        DensityMatrix(sim.ancilla_matrix()),
                        std::move(marginals),
                        sim.norm_drift(),
                        sim.guard_amplitude()};
}

ReducedChannel::ReducedChannel(ComplexMatrix u, std::vector<std::complex<double>> moments,
                               long a_abs_max)
    : u_(std::move(u)), moments_(std::move(moments)), a_abs_max_(a_abs_max) {
  if (u_.rows() != u_.cols()) {
    throw validation_error("ReducedChannel: control matrix must be square");
  }
  if (moments_.size() != static_cast<std::size_t>(2 * a_abs_max_ + 1) ||
      a_abs_max_ < 2 * (u_.rows() - 1)) {
    throw validation_error("ReducedChannel: need moments for |a| <= 2(d-1)");
  }
}

ComplexMatrix ReducedChannel::apply_to(const ComplexMatrix& rho) const {
  const Eigen::Index d = u_.rows();
  if (rho.rows() != d || rho.cols() != d) {
    throw validation_error("ReducedChannel: state dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index mm = 0; mm < d; ++mm) {
      std::complex<double> acc = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
          const long a = (k - j) + (mm - l);
          acc += moments_[static_cast<std::size_t>(a + a_abs_max_)] * u_(j, k) * rho(k, l) *
                 std::conj(u_(mm, l));
        }
      }
      out(j, mm) = acc;
    }
  }
  return out;
}

ReducedChannel reduced_channel_from_state(const ComplexMatrix& u, const ComplexMatrix& sigma) {
  const long a_abs_max = 2 * (u.rows() - 1);
  return ReducedChannel(u, shift_moments(sigma, a_abs_max), a_abs_max);
}

CatalyticReport catalytic_check(const AbergConfig& cfg) {
  ProtocolSim sim(cfg);
  const long a_abs_max = 2 * (cfg.dim() - 1);
  CatalyticReport rep;
  rep.before = shift_moments(sim.ancilla_matrix(), a_abs_max);
  for (int i = 0; i < cfg.n_systems; ++i) {
    sim.apply_step(i);
    sim.check_health(("step " + std::to_string(i + 1)).c_str());
    rep.after_each_step.push_back(shift_moments(sim.ancilla_matrix(), a_abs_max));
    for (std::size_t a = 0; a < rep.before.size(); ++a) {
      rep.max_diff = std::max(rep.max_diff, std::abs(rep.after_each_step.back()[a] - rep.before[a]));
    }
  }
  return rep;
}

ComplexMatrix two_qubit_closed_form(int m) {
  if (m < 1) {
    throw validation_error("two_qubit_closed_form: support length must be >= 1");
  }
  const double a1 = eta_moment(m, 1);
  const double a2 = eta_moment(m, 2);
  ComplexMatrix rho(4, 4);
  rho << 1.0, a1, a1, a2,
         a1, 1.0, 1.0, a1,
         a1, 1.0, 1.0, a1,
         a2, a1, a1, 1.0;
  return 0.25 * rho;
}

TwoQubitFamily two_qubit_family(int m) {
  AbergConfig cfg;
  cfg.unitary = hadamard2();
  cfg.m = m;
  cfg.n_systems = 2;
  const ProtocolResult run = run_protocol(cfg);
  TwoQubitFamily fam{run.system_state, two_qubit_closed_form(m), 0.0};
  fam.max_deviation = (fam.simulated.matrix() - fam.closed_form).cwiseAbs().maxCoeff();
  if (fam.max_deviation > 1e-12) {
    throw std::runtime_error("two_qubit_family: simulation left the closed-form family");
  }
  return fam;
}

std::vector<SweepRow> fig1_sweep(int m_min, int m_max, const MonotoneFunction& f) {
  if (m_min < 1 || m_max < m_min) {
    throw validation_error("fig1_sweep: need 1 <= m_min <= m_max");
  }
  const SubsystemLayout layout({2, 2});
  ComplexMatrix hq = ComplexMatrix::Zero(2, 2);
  hq(1, 1) = 1.0;
  const std::vector<Observable> locals{Observable(hq), Observable(hq)};
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(m_max - m_min + 1));
  for (int m = m_min; m <= m_max; ++m) {
    const DensityMatrix rho{two_qubit_closed_form(m)};
    const GapResult gap = superadditivity_gap(rho, locals, layout, f);
    rows.push_back(SweepRow{m, gap.global_value, gap.local_sum, gap.gap});
  }
  return rows;
}

namespace {

// log C(n, w), stable for any n that fits an int.
double log_binomial(int n, int w) {
  return std::lgamma(n + 1.0) - std::lgamma(w + 1.0) - std::lgamma(n - w + 1.0);
}

}  // namespace

DensityMatrix symmetric_system_state(const ComplexMatrix& u, int m, int n) {
  if (u.rows() != 2 || u.cols() != 2) {
    throw validation_error("symmetric_system_state: control unitary must be 2x2");
  }
  if ((u.adjoint() * u - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-9) {
    throw validation_error("symmetric_system_state: control matrix is not unitary");
  }
  if (m < 1 || n < 1) {
    throw validation_error("symmetric_system_state: need m >= 1 and n >= 1");
  }
  // Starting from |0...0>, step k only consumes column 0 of U, and the joint
  // state stays supported on Dicke states paired with shifted eta states:
  //   sum_w sqrt(C(n,w)) u00^(n-w) u10^w |D_w> ⊗ |eta^(l-w)>.
  const std::complex<double> u00 = u(0, 0);
  const std::complex<double> u10 = u(1, 0);
  const double m00 = std::abs(u00);
  const double m10 = std::abs(u10);
  const double p00 = std::arg(u00);
  const double p10 = std::arg(u10);

  std::vector<std::complex<double>> amp(static_cast<std::size_t>(n) + 1, 0.0);
  for (int w = 0; w <= n; ++w) {
    if ((m00 == 0.0 && w < n) || (m10 == 0.0 && w > 0)) {
      continue;
    }
    double log_mag = 0.5 * log_binomial(n, w);
    if (w < n) {
      log_mag += (n - w) * std::log(m00);
    }
    if (w > 0) {
      log_mag += w * std::log(m10);
    }
    const double phase = (n - w) * p00 + w * p10;
    amp[static_cast<std::size_t>(w)] =
        std::exp(log_mag) * std::complex<double>(std::cos(phase), std::sin(phase));
  }

  ComplexMatrix rho = ComplexMatrix::Zero(n + 1, n + 1);
  for (int w = 0; w <= n; ++w) {
    for (int v = 0; v <= n; ++v) {
      rho(w, v) = amp[static_cast<std::size_t>(w)] * std::conj(amp[static_cast<std::size_t>(v)]) *
                  eta_moment(m, w - v);
    }
  }
  const double tr = rho.trace().real();
  if (tr <= 0.0) {
    throw std::runtime_error("symmetric_system_state: degenerate state");
  }
  rho /= tr;
  return DensityMatrix(std::move(rho));
}

Observable symmetric_hamiltonian(int n) {
  ComplexMatrix h = ComplexMatrix::Zero(n + 1, n + 1);
  for (int w = 0; w <= n; ++w) {
    h(w, w) = static_cast<double>(w);
  }
  return Observable(std::move(h));
}

DensityMatrix symmetric_qubit_marginal(const DensityMatrix& dicke_state, int n) {
  if (dicke_state.dim() != n + 1 || n < 1) {
    throw validation_error("symmetric_qubit_marginal: state is not (n+1)-dimensional");
  }
  const ComplexMatrix& rho = dicke_state.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (int w = 0; w <= n; ++w) {
    out(0, 0) += rho(w, w) * (static_cast<double>(n - w) / n);
    out(1, 1) += rho(w, w) * (static_cast<double>(w) / n);
    if (w < n) {
      // Tr_{2..n} |D_w><D_(w+1)| = sqrt((w+1)(n-w)) / n |0><1|
      out(0, 1) += rho(w, w + 1) * (std::sqrt((w + 1.0) * (n - w)) / n);
    }
  }
  out(1, 0) = std::conj(out(0, 1));
  return DensityMatrix(std::move(out));
}

double protocol_global_skew(const ComplexMatrix& u, int m, int n, const MonotoneFunction& f) {
  const DensityMatrix rho = symmetric_system_state(u, m, n);
  return skew_info(rho, symmetric_hamiltonian(n), f).value;
}

MultipartiteResult multipartite_violation(int m, const MonotoneFunction& f, int n_max) {
  if (n_max < 1) {
    throw validation_error("multipartite_violation: n_max must be >= 1");
  }
  MultipartiteResult res;

  // The eta resource itself, against the ladder Hamiltonian.
  const LadderAncilla anc{static_cast<Eigen::Index>(m) + 2, 0};
  const EtaState eta{m, 1};
  const DensityMatrix eta_state = DensityMatrix::from_pure(eta.vector_in(anc));
  res.ancilla_value = skew_info(eta_state, Observable(anc.hamiltonian()), f).value;

  AbergConfig cfg;
  cfg.unitary = hadamard2();
  cfg.m = m;
  cfg.n_systems = 1;
  const ProtocolResult run = run_protocol(cfg);
  ComplexMatrix hq = ComplexMatrix::Zero(2, 2);
  hq(1, 1) = 1.0;
  res.local_value = skew_info(run.marginals.front(), Observable(hq), f).value;

  res.ratio_curve.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    res.ratio_curve.push_back(n * res.local_value / res.ancilla_value);
  }
  if (res.local_value > 1e-15) {
    res.n_star = static_cast<int>(std::floor(res.ancilla_value / res.local_value)) + 1;
    res.violation_found = res.n_star <= n_max;
  }
  return res;
}

OptimalityReport optimality_witness(int parties, int depth, int m, const MonotoneFunction& f) {
  if (parties < 2 || depth < 0) {
    throw validation_error("optimality_witness: need parties >= 2 and depth >= 0");
  }
  long n_long = 1;
  for (int i = 0; i < depth; ++i) {
    n_long *= parties;
    if (n_long > (1L << 20)) {
      throw validation_error("optimality_witness: parties^depth is too large");
    }
  }
  const int n = static_cast<int>(n_long);

  OptimalityReport rep;
  rep.parties = parties;
  rep.depth = depth;
  rep.n = n;
  rep.m = m;
  rep.f_id = f.id();

  const ComplexMatrix u = hadamard2();
  ComplexMatrix hq = ComplexMatrix::Zero(2, 2);
  hq(1, 1) = 1.0;
  const Observable h_qubit(hq);

  const DensityMatrix dicke = symmetric_system_state(u, m, n);
  rep.global_value = skew_info(dicke, symmetric_hamiltonian(n), f).value;

  const DensityMatrix marginal = symmetric_qubit_marginal(dicke, n);
  const double local_one = skew_info(marginal, h_qubit, f).value;
  rep.local_sum = n * local_one;
  rep.slope = local_one;

  // Catalyticity makes the per-qubit value size-independent; measure that.
  const int probe = std::min(n, 24);
  for (int np = 1; np <= probe; ++np) {
    const DensityMatrix rho_np = symmetric_system_state(u, m, np);
    const double inc = skew_info(symmetric_qubit_marginal(rho_np, np), h_qubit, f).value;
    rep.max_slope_deviation = std::max(rep.max_slope_deviation, std::abs(inc - local_one));
  }

  const LadderAncilla anc{static_cast<Eigen::Index>(m) + 2, 0};
  const EtaState eta{m, 1};
  rep.ancilla_value =
      skew_info(DensityMatrix::from_pure(eta.vector_in(anc)), Observable(anc.hamiltonian()), f)
          .value;

  rep.ratio = rep.local_sum / rep.global_value;
  rep.ratio_vs_ancilla = rep.local_sum / rep.ancilla_value;
  return rep;
}

}  // namespace skew
