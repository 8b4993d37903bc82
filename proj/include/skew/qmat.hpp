#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace skew {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Thrown when an input fails a structural precondition (non-Hermitian state,
// bad trace, dimension mismatch, malformed table, ...).
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr double kHermTol = 1e-9;    // ||A - A†||_max, relative to entry scale
inline constexpr double kTraceTol = 1e-9;   // |tr(rho) - 1|
inline constexpr double kPsdTol = 1e-10;    // eigenvalues in [-kPsdTol, 0) clamp to 0

struct EigenSystem {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns, phase-fixed
};

// Hermitian eigendecomposition with a deterministic gauge: each column is
// rotated so its largest-magnitude component is real and positive (smallest
// index wins ties). Throws validation_error if the input is not Hermitian.
EigenSystem eig_hermitian(const ComplexMatrix& a);

class Observable {
 public:
  explicit Observable(ComplexMatrix m);
  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

// Ordered subsystem dimensions; subsystem 0 is the most significant tensor
// factor (row-major Kronecker convention).
class SubsystemLayout {
 public:
  explicit SubsystemLayout(std::vector<Eigen::Index> dims);
  Eigen::Index total_dim() const { return total_; }
  Eigen::Index dim(std::size_t k) const { return dims_.at(k); }
  std::size_t size() const { return dims_.size(); }
  const std::vector<Eigen::Index>& dims() const { return dims_; }

 private:
  std::vector<Eigen::Index> dims_;
  Eigen::Index total_;
};

class DensityMatrix {
 public:
  // Validates Hermiticity and unit trace eagerly; positivity is checked when
  // the spectrum is first requested. Eigenvalues in [-kPsdTol, 0) are clamped
  // to zero and the spectrum renormalized; anything more negative throws.
  explicit DensityMatrix(ComplexMatrix rho);
  static DensityMatrix from_pure(const ComplexVector& psi);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  // Lazily computed and cached; recomputation is idempotent, so the cache
  // needs no synchronization.
  const EigenSystem& spectrum() const;

 private:
  ComplexMatrix m_;
  mutable std::optional<EigenSystem> spec_;
};

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out every subsystem not listed in `keep` (indices ascending, no
// duplicates). The operator overload works on arbitrary square matrices.
ComplexMatrix partial_trace(const ComplexMatrix& op, const SubsystemLayout& layout,
                            const std::vector<std::size_t>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const SubsystemLayout& layout,
                            const std::vector<std::size_t>& keep);

// sum_j 1 ⊗ ... ⊗ H_j ⊗ ... ⊗ 1 for one local term per subsystem.
Observable embed_local_observables(const std::vector<Observable>& locals,
                                   const SubsystemLayout& layout);

// rho^alpha for alpha in (0, 1], defined through the clamped spectrum with
// the convention 0^alpha = 0.
ComplexMatrix matrix_power(const DensityMatrix& rho, double alpha);

}  // namespace skew
