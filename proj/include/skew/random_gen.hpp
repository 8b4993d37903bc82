#pragma once

#include "skew/covariant.hpp"
#include "skew/qmat.hpp"

#include <cstdint>
#include <random>

namespace skew {

// Seeded generator with a fixed Gaussian transform (Box-Muller over
// mt19937_64) so streams are reproducible across standard libraries;
// std::normal_distribution is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double gaussian();
  std::complex<double> complex_gaussian();
  std::uint64_t integer(std::uint64_t bound);  // [0, bound)

  ComplexMatrix ginibre(Eigen::Index n);
  DensityMatrix random_density(Eigen::Index n);
  ComplexVector random_pure(Eigen::Index n);
  Observable random_observable(Eigen::Index n);
  ComplexMatrix random_unitary(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
};

// Hamiltonian with small integer spectrum (degeneracies likely) in the
// computational basis.
Observable random_integer_hamiltonian(Rng& rng, Eigen::Index n, int max_level);

// Unitary commuting with h: random unitaries inside each eigenspace of h.
ComplexMatrix random_commuting_unitary(Rng& rng, const Observable& h);

// Instrument whose Kraus operators all commute with h, built from random
// blocks inside the eigenspaces of h, normalized to sum to a channel.
Instrument random_commuting_instrument(Rng& rng, const Observable& h, int branches);

// Covariant channel from an energy-conserving dilation: a block-random
// unitary on system x ancilla commuting with H_S ⊗ 1 + 1 ⊗ H_A, with a
// diagonal ancilla state traced out. Kraus operators generally do not
// commute with h_s.
QuantumChannel random_covariant_channel(Rng& rng, const Observable& h_s,
                                        Eigen::Index ancilla_dim);

}  // namespace skew
