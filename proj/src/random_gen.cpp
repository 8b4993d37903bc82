#include "skew/random_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace skew {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  // Box-Muller; one fresh pair per call keeps the stream position predictable.
  double u1 = uniform();
  while (u1 <= 0.0) {
    u1 = uniform();
  }
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::complex<double> Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

std::uint64_t Rng::integer(std::uint64_t bound) {
  if (bound == 0) {
    throw validation_error("Rng::integer: bound must be positive");
  }
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = engine_();
  while (draw >= limit) {
    draw = engine_();
  }
  return draw % bound;
}

ComplexMatrix Rng::ginibre(Eigen::Index n) {
  ComplexMatrix g(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      g(r, c) = complex_gaussian();
    }
  }
  return g;
}

DensityMatrix Rng::random_density(Eigen::Index n) {
  const ComplexMatrix g = ginibre(n);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(std::move(rho));
}

ComplexVector Rng::random_pure(Eigen::Index n) {
  ComplexVector psi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    psi[i] = complex_gaussian();
  }
  psi.normalize();
  return psi;
}

Observable Rng::random_observable(Eigen::Index n) {
  const ComplexMatrix g = ginibre(n);
  return Observable(0.5 * (g + g.adjoint()));
}

ComplexMatrix Rng::random_unitary(Eigen::Index n) {
  const ComplexMatrix g = ginibre(n);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR();
  for (Eigen::Index c = 0; c < n; ++c) {
    const std::complex<double> piv = r(c, c);
    const double mag = std::abs(piv);
    q.col(c) *= mag > 0.0 ? piv / mag : 1.0;
  }
  return q;
}

Observable random_integer_hamiltonian(Rng& rng, Eigen::Index n, int max_level) {
  if (max_level < 1) {
    throw validation_error("random_integer_hamiltonian: max_level must be >= 1");
  }
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, i) = static_cast<double>(rng.integer(static_cast<std::uint64_t>(max_level) + 1));
  }
  return Observable(std::move(h));
}

namespace {

// Indices of eigenvalue clusters (values within 1e-6 of each other collapse).
std::vector<std::vector<Eigen::Index>> cluster(const RealVector& values) {
  std::vector<Eigen::Index> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return values[a] < values[b]; });
  std::vector<std::vector<Eigen::Index>> blocks;
  for (Eigen::Index idx : order) {
    if (blocks.empty() || values[idx] - values[blocks.back().back()] > 1e-6) {
      blocks.emplace_back();
    }
    blocks.back().push_back(idx);
  }
  return blocks;
}

ComplexMatrix block_random_unitary(Rng& rng, Eigen::Index dim,
                                   const std::vector<std::vector<Eigen::Index>>& blocks) {
  ComplexMatrix w = ComplexMatrix::Zero(dim, dim);
  for (const auto& block : blocks) {
    const Eigen::Index b = static_cast<Eigen::Index>(block.size());
    const ComplexMatrix u = rng.random_unitary(b);
    for (Eigen::Index r = 0; r < b; ++r) {
      for (Eigen::Index c = 0; c < b; ++c) {
        w(block[static_cast<std::size_t>(r)], block[static_cast<std::size_t>(c)]) = u(r, c);
      }
    }
  }
  return w;
}

}  // namespace

ComplexMatrix random_commuting_unitary(Rng& rng, const Observable& h) {
  const EigenSystem es = eig_hermitian(h.matrix());
  const auto blocks = cluster(es.eigenvalues);
  const ComplexMatrix w = block_random_unitary(rng, h.dim(), blocks);
  return es.eigenvectors * w * es.eigenvectors.adjoint();
}

Instrument random_commuting_instrument(Rng& rng, const Observable& h, int branches) {
  if (branches < 1) {
    throw validation_error("random_commuting_instrument: need at least one branch");
  }
  const EigenSystem es = eig_hermitian(h.matrix());
  const auto blocks = cluster(es.eigenvalues);
  const Eigen::Index d = h.dim();

  std::vector<ComplexMatrix> raw;
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < branches; ++j) {
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    for (const auto& block : blocks) {
      for (Eigen::Index r : block) {
        for (Eigen::Index c : block) {
          a(r, c) = rng.complex_gaussian();
        }
      }
    }
    s += a.adjoint() * a;
    raw.push_back(std::move(a));
  }

  // S^{-1/2}, block diagonal by construction, normalizes the branches.
  const EigenSystem ss = eig_hermitian(s);
  RealVector inv_root(ss.eigenvalues.size());
  for (Eigen::Index i = 0; i < inv_root.size(); ++i) {
    const double lam = ss.eigenvalues[i];
    if (lam <= 1e-12) {
      throw std::runtime_error("random_commuting_instrument: singular normalization");
    }
    inv_root[i] = 1.0 / std::sqrt(lam);
  }
  const ComplexMatrix s_inv_root =
      ss.eigenvectors * inv_root.asDiagonal() * ss.eigenvectors.adjoint();

  std::vector<ComplexMatrix> kraus;
  kraus.reserve(raw.size());
  for (const ComplexMatrix& a : raw) {
    kraus.push_back(es.eigenvectors * (a * s_inv_root) * es.eigenvectors.adjoint());
  }
  return commuting_measurement(kraus, h);
}

QuantumChannel random_covariant_channel(Rng& rng, const Observable& h_s,
                                        Eigen::Index ancilla_dim) {
  if (ancilla_dim < 1) {
    throw validation_error("random_covariant_channel: ancilla dimension must be >= 1");
  }
  const EigenSystem es = eig_hermitian(h_s.matrix());
  const Eigen::Index ds = h_s.dim();
  const Eigen::Index total = ds * ancilla_dim;

  // Total energy per product level; the ancilla is a unit ladder.
  RealVector energy(total);
  for (Eigen::Index s = 0; s < ds; ++s) {
    for (Eigen::Index a = 0; a < ancilla_dim; ++a) {
      energy[s * ancilla_dim + a] = es.eigenvalues[s] + static_cast<double>(a);
    }
  }
  const ComplexMatrix w = block_random_unitary(rng, total, cluster(energy));

  // Diagonal ancilla state, Dirichlet-like weights.
  RealVector sigma(ancilla_dim);
  double norm = 0.0;
  for (Eigen::Index a = 0; a < ancilla_dim; ++a) {
    double u = rng.uniform();
    while (u <= 0.0) {
      u = rng.uniform();
    }
    sigma[a] = -std::log(u);
    norm += sigma[a];
  }
  sigma /= norm;

  // M_(i,a) = sqrt(sigma_a) (1 ⊗ <i|) W (1 ⊗ |a>), mapped back to the
  // computational basis of the system.
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(ancilla_dim * ancilla_dim));
  for (Eigen::Index a = 0; a < ancilla_dim; ++a) {
    const double scale = std::sqrt(sigma[a]);
    for (Eigen::Index i = 0; i < ancilla_dim; ++i) {
      ComplexMatrix m(ds, ds);
      for (Eigen::Index r = 0; r < ds; ++r) {
        for (Eigen::Index c = 0; c < ds; ++c) {
          m(r, c) = w(r * ancilla_dim + i, c * ancilla_dim + a);
        }
      }
      kraus.push_back(scale * (es.eigenvectors * m * es.eigenvectors.adjoint()));
    }
  }
  return QuantumChannel(std::move(kraus));
}

}  // namespace skew
