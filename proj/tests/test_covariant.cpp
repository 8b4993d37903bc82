#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skew/covariant.hpp"
#include "skew/random_gen.hpp"
#include "skew/skewinfo.hpp"

#include <cmath>
#include <complex>

using namespace skew;

namespace {

Observable number_op(Eigen::Index d) {
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    h(j, j) = static_cast<double>(j);
  }
  return Observable(std::move(h));
}

ComplexMatrix hadamard() {
  ComplexMatrix m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

}  // namespace

TEST_CASE("channel construction checks the Kraus sum") {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  CHECK(QuantumChannel{std::vector<ComplexMatrix>{id2}}.trace_preserving());
  CHECK_THROWS_AS(QuantumChannel{std::vector<ComplexMatrix>{2.0 * id2}}, validation_error);
  CHECK_FALSE(QuantumChannel{std::vector<ComplexMatrix>{0.5 * id2}}.trace_preserving());
  CHECK_THROWS_AS(QuantumChannel{std::vector<ComplexMatrix>{}}, validation_error);
}

TEST_CASE("phase gates are covariant, the hadamard is not") {
  const Observable h = number_op(2);
  ComplexMatrix phase = ComplexMatrix::Identity(2, 2);
  phase(1, 1) = std::polar(1.0, 0.7);
  CHECK(is_covariant(QuantumChannel{std::vector<ComplexMatrix>{phase}}, h, h).covariant);

  const CovarianceReport bad =
      is_covariant(QuantumChannel{std::vector<ComplexMatrix>{hadamard()}}, h, h);
  CHECK_FALSE(bad.covariant);
  CHECK(bad.max_deviation > 0.1);
}

TEST_CASE("dephasing in the energy basis is covariant and kills coherence") {
  const Observable h = number_op(2);
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const QuantumChannel deph{std::vector<ComplexMatrix>{p0, p1}};
  CHECK(is_covariant(deph, h, h).covariant);

  ComplexVector v(2);
  v << 1.0, 1.0;
  const DensityMatrix plus = DensityMatrix::from_pure(v);
  const DensityMatrix out = apply(deph, plus);
  const MonotoneFunction wy = builtin_monotone("WY");
  CHECK(skew_info(plus, h, wy).value == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(skew_info(out, h, wy).value) <= 1e-12);
}

TEST_CASE("partial trace is a covariant channel for local charges") {
  const SubsystemLayout layout({2, 2});
  const QuantumChannel pt = partial_trace_channel(layout, {0});
  CHECK(pt.trace_preserving());
  Rng rng(3);
  const DensityMatrix rho = rng.random_density(4);
  const ComplexMatrix direct = partial_trace(rho.matrix(), layout, {0});
  CHECK((pt.apply_to(rho.matrix()) - direct).cwiseAbs().maxCoeff() < 1e-13);

  const Observable h_tot =
      embed_local_observables({number_op(2), number_op(2)}, layout);
  CHECK(is_covariant(pt, h_tot, number_op(2)).covariant);
}

TEST_CASE("commuting measurement construction") {
  const Observable h = number_op(2);
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const Instrument inst = commuting_measurement({p0, p1}, h);
  CHECK(inst.branches().size() == 2);

  CHECK_THROWS_AS(commuting_measurement({hadamard()}, h), validation_error);
  // commuting but not complete
  CHECK_THROWS_AS(commuting_measurement({p0, 0.5 * p1}, h), validation_error);
}

TEST_CASE("generated covariant channels stay covariant and monotone") {
  Rng rng(41);
  const MonotoneFunction wy = builtin_monotone("WY");
  for (Eigen::Index d : {2, 3, 4}) {
    const Observable h = random_integer_hamiltonian(rng, d, 2);
    for (int i = 0; i < 8; ++i) {
      const QuantumChannel ch = random_covariant_channel(rng, h, 2);
      CHECK(ch.trace_preserving());
      CHECK(is_covariant(ch, h, h).covariant);
      const DensityMatrix rho = rng.random_density(d);
      CHECK(skew_info(apply(ch, rho), h, wy).value <=
            skew_info(rho, h, wy).value + 1e-10);
    }
  }
}

TEST_CASE("generated instruments contract on average") {
  Rng rng(19);
  for (Eigen::Index d : {2, 3, 4, 6}) {
    const Observable h = random_integer_hamiltonian(rng, d, 2);
    const Instrument inst = random_commuting_instrument(rng, h, 2);
    const DensityMatrix rho = rng.random_density(d);
    for (const MonotoneFunction& f : standard_registry()) {
      const SelectiveMonotonicityResult r = selective_monotonicity_check(inst, rho, h, f);
      CHECK(r.after_avg <= r.before + 1e-10);
      double psum = 0.0;
      for (double p : r.branch_probs) {
        CHECK(p >= -1e-12);
        psum += p;
      }
      CHECK(psum == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("commuting unitaries leave the measure unchanged") {
  Rng rng(23);
  const MonotoneFunction f = builtin_monotone("WYD", 0.75);
  for (int i = 0; i < 10; ++i) {
    const Eigen::Index d = 2 + (i % 3);
    const Observable h = random_integer_hamiltonian(rng, d, 2);
    const ComplexMatrix u = random_commuting_unitary(rng, h);
    CHECK((u * h.matrix() - h.matrix() * u).cwiseAbs().maxCoeff() < 1e-12);
    const DensityMatrix rho = rng.random_density(d);
    const DensityMatrix rotated{ComplexMatrix(u * rho.matrix() * u.adjoint())};
    CHECK(skew_info(rotated, h, f).value ==
          doctest::Approx(skew_info(rho, h, f).value).epsilon(1e-10));
  }
}
