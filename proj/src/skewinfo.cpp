#include "skew/skewinfo.hpp"

#include <cmath>

namespace skew {

SkewResult skew_info(const DensityMatrix& rho, const Observable& h, const MonotoneFunction& f) {
  if (rho.dim() != h.dim()) {
    throw validation_error("skew_info: state and observable dimensions differ");
  }
  const EigenSystem& es = rho.spectrum();
  const Eigen::Index d = rho.dim();
  const double lam_max = es.eigenvalues.maxCoeff();
  const double zero_cut = 1e-12 * lam_max;

  SkewResult res;
  res.f_id = f.id();
  std::vector<double> lam(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double v = es.eigenvalues[i];
    if (v <= zero_cut) {
      lam[i] = 0.0;
      res.diagnostics.largest_discarded = std::max(res.diagnostics.largest_discarded, v);
    } else {
      lam[i] = v;
      ++res.diagnostics.rank_used;
    }
  }

  const ComplexMatrix ht = es.eigenvectors.adjoint() * h.matrix() * es.eigenvectors;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (lam[i] == 0.0 && lam[j] == 0.0) {
        continue;  // w(0, 0) = 0
      }
      const double w = weight(f, lam[i], lam[j]);
      if (w != 0.0) {
        acc += w * std::norm(ht(i, j));
      }
    }
  }
  if (acc < 0.0 && acc >= -1e-12) {
    acc = 0.0;
  }
  res.value = acc;
  return res;
}

double wy_direct(const DensityMatrix& rho, const Observable& h) {
  if (rho.dim() != h.dim()) {
    throw validation_error("wy_direct: state and observable dimensions differ");
  }
  const ComplexMatrix& hm = h.matrix();
  const ComplexMatrix root = matrix_power(rho, 0.5);
  const double t1 = (rho.matrix() * hm * hm).trace().real();
  const double t2 = (root * hm * root * hm).trace().real();
  return t1 - t2;
}

double wyd_direct(const DensityMatrix& rho, const Observable& h, double alpha) {
  if (rho.dim() != h.dim()) {
    throw validation_error("wyd_direct: state and observable dimensions differ");
  }
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw validation_error("wyd_direct: alpha must lie strictly inside (0, 1)");
  }
  const ComplexMatrix& hm = h.matrix();
  const ComplexMatrix ra = matrix_power(rho, alpha);
  const ComplexMatrix rb = matrix_power(rho, 1.0 - alpha);
  const double t1 = (rho.matrix() * hm * hm).trace().real();
  const double t2 = (ra * hm * rb * hm).trace().real();
  return t1 - t2;
}

double variance(const DensityMatrix& rho, const Observable& h) {
  if (rho.dim() != h.dim()) {
    throw validation_error("variance: state and observable dimensions differ");
  }
  const ComplexMatrix& hm = h.matrix();
  const double mean = (rho.matrix() * hm).trace().real();
  const double second = (rho.matrix() * hm * hm).trace().real();
  return second - mean * mean;
}

GapResult superadditivity_gap(const DensityMatrix& rho, const std::vector<Observable>& locals,
                              const SubsystemLayout& layout, const MonotoneFunction& f) {
  if (rho.dim() != layout.total_dim()) {
    throw validation_error("superadditivity_gap: state does not match layout");
  }
  const Observable global_h = embed_local_observables(locals, layout);
  GapResult res;
  res.global_value = skew_info(rho, global_h, f).value;
  for (std::size_t k = 0; k < layout.size(); ++k) {
    const DensityMatrix marginal = partial_trace(rho, layout, {k});
    res.local_values.push_back(skew_info(marginal, locals[k], f).value);
    res.local_sum += res.local_values.back();
  }
  res.gap = res.global_value - res.local_sum;
  res.weak_bound_satisfied =
      res.global_value >= res.local_sum / static_cast<double>(layout.size()) - 1e-10;
  return res;
}

RegisterIdentity register_identity_check(const std::vector<DensityMatrix>& states,
                                         const std::vector<double>& probs, const Observable& h,
                                         const MonotoneFunction& f) {
  if (states.empty() || states.size() != probs.size()) {
    throw validation_error("register_identity_check: need one probability per state");
  }
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0) {
      throw validation_error("register_identity_check: probabilities must be >= 0");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw validation_error("register_identity_check: probabilities must sum to 1");
  }

  const Eigen::Index d = states.front().dim();
  const Eigen::Index k = static_cast<Eigen::Index>(states.size());
  ComplexMatrix block = ComplexMatrix::Zero(d * k, d * k);
  RegisterIdentity res;
  for (Eigen::Index i = 0; i < k; ++i) {
    const DensityMatrix& rho = states[static_cast<std::size_t>(i)];
    if (rho.dim() != d) {
      throw validation_error("register_identity_check: states must share one dimension");
    }
    ComplexMatrix reg = ComplexMatrix::Zero(k, k);
    reg(i, i) = probs[static_cast<std::size_t>(i)];
    block += tensor(rho.matrix(), reg);
    res.rhs += probs[static_cast<std::size_t>(i)] * skew_info(rho, h, f).value;
  }
  const Observable embedded(tensor(h.matrix(), ComplexMatrix::Identity(k, k)));
  res.lhs = skew_info(DensityMatrix(block), embedded, f).value;
  res.difference = res.lhs - res.rhs;
  return res;
}

}  // namespace skew
