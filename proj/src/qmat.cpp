#include "skew/qmat.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace skew {

namespace {

void require_hermitian(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw validation_error(std::string(what) + ": matrix is not square");
  }
  const double scale = std::max(1.0, a.size() > 0 ? a.cwiseAbs().maxCoeff() : 0.0);
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > kHermTol * scale) {
    throw validation_error(std::string(what) + ": matrix is not Hermitian");
  }
}

void fix_phases(ComplexMatrix& vecs) {
  for (Eigen::Index c = 0; c < vecs.cols(); ++c) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < vecs.rows(); ++r) {
      const double mag = std::abs(vecs(r, c));
      if (mag > best) {  // strict: ties keep the smallest index
        best = mag;
        pivot = r;
      }
    }
    if (best > 0.0) {
      vecs.col(c) *= std::conj(vecs(pivot, c)) / best;
    }
  }
}

}  // namespace

EigenSystem eig_hermitian(const ComplexMatrix& a) {
  require_hermitian(a, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver did not converge");
  }
  EigenSystem sys{solver.eigenvalues(), solver.eigenvectors()};
  fix_phases(sys.eigenvectors);
  return sys;
}

Observable::Observable(ComplexMatrix m) : m_(std::move(m)) {
  require_hermitian(m_, "Observable");
}

SubsystemLayout::SubsystemLayout(std::vector<Eigen::Index> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw validation_error("SubsystemLayout: no subsystems");
  }
  total_ = 1;
  for (Eigen::Index d : dims_) {
    if (d < 1) {
      throw validation_error("SubsystemLayout: dimensions must be positive");
    }
    total_ *= d;
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix rho) : m_(std::move(rho)) {
  require_hermitian(m_, "DensityMatrix");
  if (std::abs(m_.trace() - std::complex<double>(1.0, 0.0)) > kTraceTol) {
    throw validation_error("DensityMatrix: trace is not 1");
  }
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& psi) {
  const double n = psi.norm();
  if (n < 1e-12) {
    throw validation_error("DensityMatrix::from_pure: vector has near-zero norm");
  }
  ComplexVector u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

const EigenSystem& DensityMatrix::spectrum() const {
  if (!spec_) {
    EigenSystem sys = eig_hermitian(m_);
    double total = 0.0;
    for (Eigen::Index i = 0; i < sys.eigenvalues.size(); ++i) {
      double& lam = sys.eigenvalues[i];
      if (lam < -kPsdTol) {
        throw validation_error("DensityMatrix: eigenvalue " + std::to_string(lam) +
                               " is below the positivity tolerance");
      }
      lam = std::max(lam, 0.0);
      total += lam;
    }
    if (total <= 0.0) {
      throw std::runtime_error("DensityMatrix: spectrum summed to zero after clamping");
    }
    sys.eigenvalues /= total;
    spec_ = std::move(sys);
  }
  return *spec_;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

namespace {

// Additive index decomposition: a full row index splits into a kept part and
// a traced part that occupy disjoint digit positions.
struct TraceIndexing {
  std::vector<Eigen::Index> kept_contrib;    // size = prod kept dims
  std::vector<Eigen::Index> traced_contrib;  // size = prod traced dims
};

TraceIndexing build_indexing(const SubsystemLayout& layout, const std::vector<std::size_t>& keep) {
  const std::size_t n = layout.size();
  std::vector<bool> is_kept(n, false);
  std::size_t prev = 0;
  bool first = true;
  for (std::size_t k : keep) {
    if (k >= n) {
      throw validation_error("partial_trace: keep index out of range");
    }
    if (!first && k <= prev) {
      throw validation_error("partial_trace: keep indices must be strictly ascending");
    }
    is_kept[k] = true;
    prev = k;
    first = false;
  }
  if (keep.empty()) {
    throw validation_error("partial_trace: keep set is empty");
  }

  std::vector<Eigen::Index> stride(n);
  Eigen::Index acc = 1;
  for (std::size_t j = n; j-- > 0;) {
    stride[j] = acc;
    acc *= layout.dim(j);
  }

  TraceIndexing ix;
  ix.kept_contrib.assign(1, 0);
  ix.traced_contrib.assign(1, 0);
  for (std::size_t j = 0; j < n; ++j) {
    auto& target = is_kept[j] ? ix.kept_contrib : ix.traced_contrib;
    std::vector<Eigen::Index> grown;
    grown.reserve(target.size() * layout.dim(j));
    for (Eigen::Index base : target) {
      for (Eigen::Index digit = 0; digit < layout.dim(j); ++digit) {
        grown.push_back(base + digit * stride[j]);
      }
    }
    target = std::move(grown);
  }
  return ix;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& op, const SubsystemLayout& layout,
                            const std::vector<std::size_t>& keep) {
  if (op.rows() != op.cols() || op.rows() != layout.total_dim()) {
    throw validation_error("partial_trace: operator does not match layout");
  }
  const TraceIndexing ix = build_indexing(layout, keep);
  const Eigen::Index dk = static_cast<Eigen::Index>(ix.kept_contrib.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r) {
    for (Eigen::Index c = 0; c < dk; ++c) {
      std::complex<double> s = 0.0;
      for (Eigen::Index t : ix.traced_contrib) {
        s += op(ix.kept_contrib[r] + t, ix.kept_contrib[c] + t);
      }
      out(r, c) = s;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const SubsystemLayout& layout,
                            const std::vector<std::size_t>& keep) {
  return DensityMatrix(partial_trace(rho.matrix(), layout, keep));
}

Observable embed_local_observables(const std::vector<Observable>& locals,
                                   const SubsystemLayout& layout) {
  if (locals.size() != layout.size()) {
    throw validation_error("embed_local_observables: one local term per subsystem required");
  }
  const Eigen::Index total = layout.total_dim();
  ComplexMatrix acc = ComplexMatrix::Zero(total, total);
  for (std::size_t j = 0; j < locals.size(); ++j) {
    if (locals[j].dim() != layout.dim(j)) {
      throw validation_error("embed_local_observables: dimension mismatch at subsystem " +
                             std::to_string(j));
    }
    Eigen::Index pre = 1, post = 1;
    for (std::size_t i = 0; i < j; ++i) pre *= layout.dim(i);
    for (std::size_t i = j + 1; i < locals.size(); ++i) post *= layout.dim(i);
    ComplexMatrix term = tensor(ComplexMatrix::Identity(pre, pre), locals[j].matrix());
    term = tensor(term, ComplexMatrix::Identity(post, post));
    acc += term;
  }
  return Observable(std::move(acc));
}

ComplexMatrix matrix_power(const DensityMatrix& rho, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw validation_error("matrix_power: exponent must lie in (0, 1]");
  }
  const EigenSystem& es = rho.spectrum();
  RealVector powered(es.eigenvalues.size());
  for (Eigen::Index i = 0; i < powered.size(); ++i) {
    const double lam = es.eigenvalues[i];
    powered[i] = lam > 0.0 ? std::pow(lam, alpha) : 0.0;
  }
  return es.eigenvectors * powered.asDiagonal() * es.eigenvectors.adjoint();
}

}  // namespace skew
