#include "skew/covariant.hpp"

#include <cmath>
#include <string>

namespace skew {

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) {
    throw validation_error("QuantumChannel: at least one Kraus operator required");
  }
  dim_out_ = kraus_.front().rows();
  dim_in_ = kraus_.front().cols();
  ComplexMatrix s = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (const ComplexMatrix& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) {
      throw validation_error("QuantumChannel: Kraus operators have inconsistent shapes");
    }
    s += k.adjoint() * k;
  }
  const double dev = (s - ComplexMatrix::Identity(dim_in_, dim_in_)).cwiseAbs().maxCoeff();
  tp_ = dev <= 1e-10;
  if (!tp_) {
    // Allow sub-normalized branches but nothing above the identity.
    const EigenSystem es = eig_hermitian(s);
    if (es.eigenvalues.maxCoeff() > 1.0 + 1e-10) {
      throw validation_error("QuantumChannel: sum_K K†K exceeds the identity");
    }
  }
}

ComplexMatrix QuantumChannel::apply_to(const ComplexMatrix& op) const {
  if (op.rows() != dim_in_ || op.cols() != dim_in_) {
    throw validation_error("QuantumChannel: operator dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_out_, dim_out_);
  for (const ComplexMatrix& k : kraus_) {
    out += k * op * k.adjoint();
  }
  return out;
}

DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho) {
  if (!ch.trace_preserving()) {
    throw validation_error("apply: channel is not trace preserving");
  }
  return DensityMatrix(ch.apply_to(rho.matrix()));
}

CovarianceReport is_covariant(const QuantumChannel& ch, const Observable& h_in,
                              const Observable& h_out) {
  if (h_in.dim() != ch.dim_in() || h_out.dim() != ch.dim_out()) {
    throw validation_error("is_covariant: Hamiltonian dimensions do not match the channel");
  }
  const Eigen::Index d = ch.dim_in();
  const ComplexMatrix& hi = h_in.matrix();
  const ComplexMatrix& ho = h_out.matrix();
  CovarianceReport rep;
  ComplexMatrix basis = ComplexMatrix::Zero(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      basis(r, c) = 1.0;
      const ComplexMatrix lhs = ch.apply_to(hi * basis - basis * hi);
      const ComplexMatrix img = ch.apply_to(basis);
      const ComplexMatrix rhs = ho * img - img * ho;
      rep.max_deviation = std::max(rep.max_deviation, (lhs - rhs).cwiseAbs().maxCoeff());
      basis(r, c) = 0.0;
    }
  }
  rep.covariant = rep.max_deviation <= 1e-9;
  return rep;
}

Instrument::Instrument(std::vector<QuantumChannel> branches) : branches_(std::move(branches)) {
  if (branches_.empty()) {
    throw validation_error("Instrument: at least one branch required");
  }
  const Eigen::Index d = branches_.front().dim_in();
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (const QuantumChannel& b : branches_) {
    if (b.dim_in() != d || b.dim_out() != d) {
      throw validation_error("Instrument: branches must share one square dimension");
    }
    for (const ComplexMatrix& k : b.kraus()) {
      s += k.adjoint() * k;
    }
  }
  if ((s - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
    throw validation_error("Instrument: branches do not sum to a trace-preserving map");
  }
}

Instrument commuting_measurement(const std::vector<ComplexMatrix>& kraus, const Observable& h) {
  std::vector<QuantumChannel> branches;
  branches.reserve(kraus.size());
  for (std::size_t j = 0; j < kraus.size(); ++j) {
    const ComplexMatrix& e = kraus[j];
    if (e.rows() != h.dim() || e.cols() != h.dim()) {
      throw validation_error("commuting_measurement: operator " + std::to_string(j) +
                             " does not match the Hamiltonian dimension");
    }
    const double comm = (e * h.matrix() - h.matrix() * e).cwiseAbs().maxCoeff();
    if (comm > 1e-9) {
      throw validation_error("commuting_measurement: operator " + std::to_string(j) +
                             " does not commute with the Hamiltonian (|[E,H]| = " +
                             std::to_string(comm) + ")");
    }
    branches.emplace_back(std::vector<ComplexMatrix>{e});
  }
  Instrument inst(std::move(branches));
  for (const QuantumChannel& b : inst.branches()) {
    const CovarianceReport rep = is_covariant(b, h, h);
    if (!rep.covariant) {
      throw std::runtime_error("commuting_measurement: branch failed the covariance gate");
    }
  }
  return inst;
}

SelectiveMonotonicityResult selective_monotonicity_check(const Instrument& inst,
                                                         const DensityMatrix& rho,
                                                         const Observable& h,
                                                         const MonotoneFunction& f) {
  if (inst.dim() != rho.dim() || h.dim() != rho.dim()) {
    throw validation_error("selective_monotonicity_check: dimension mismatch");
  }
  for (std::size_t j = 0; j < inst.branches().size(); ++j) {
    const CovarianceReport rep = is_covariant(inst.branches()[j], h, h);
    if (!rep.covariant) {
      throw validation_error("selective_monotonicity_check: branch " + std::to_string(j) +
                             " is not covariant (deviation " +
                             std::to_string(rep.max_deviation) + ")");
    }
  }
  SelectiveMonotonicityResult res;
  res.before = skew_info(rho, h, f).value;
  for (const QuantumChannel& b : inst.branches()) {
    const ComplexMatrix out = b.apply_to(rho.matrix());
    const double p = out.trace().real();
    res.branch_probs.push_back(p);
    if (p <= 1e-12) {
      continue;
    }
    const DensityMatrix post(out / p);
    res.after_avg += p * skew_info(post, h, f).value;
  }
  res.ok = res.after_avg <= res.before + 1e-9;
  return res;
}

QuantumChannel partial_trace_channel(const SubsystemLayout& layout,
                                     const std::vector<std::size_t>& keep) {
  // Kraus operators K_t = sum_i |i><i| ⊗ <t| in the kept/traced split.
  const std::size_t n = layout.size();
  std::vector<bool> is_kept(n, false);
  for (std::size_t k : keep) {
    if (k >= n) {
      throw validation_error("partial_trace_channel: keep index out of range");
    }
    is_kept[k] = true;
  }
  std::vector<Eigen::Index> stride(n);
  Eigen::Index acc = 1;
  for (std::size_t j = n; j-- > 0;) {
    stride[j] = acc;
    acc *= layout.dim(j);
  }
  std::vector<Eigen::Index> kept{0}, traced{0};
  for (std::size_t j = 0; j < n; ++j) {
    auto& target = is_kept[j] ? kept : traced;
    std::vector<Eigen::Index> grown;
    grown.reserve(target.size() * layout.dim(j));
    for (Eigen::Index base : target) {
      for (Eigen::Index digit = 0; digit < layout.dim(j); ++digit) {
        grown.push_back(base + digit * stride[j]);
      }
    }
    target = std::move(grown);
  }
  const Eigen::Index dk = static_cast<Eigen::Index>(kept.size());
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(traced.size());
  for (Eigen::Index t : traced) {
    ComplexMatrix k = ComplexMatrix::Zero(dk, layout.total_dim());
    for (Eigen::Index i = 0; i < dk; ++i) {
      k(i, kept[static_cast<std::size_t>(i)] + t) = 1.0;
    }
    kraus.push_back(std::move(k));
  }
  return QuantumChannel(std::move(kraus));
}

}  // namespace skew
