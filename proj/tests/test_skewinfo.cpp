#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skew/random_gen.hpp"
#include "skew/skewinfo.hpp"

#include <cmath>

using namespace skew;

namespace {

DensityMatrix plus_state() {
  ComplexVector v(2);
  v << 1.0, 1.0;
  return DensityMatrix::from_pure(v);
}

Observable number_op() {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(1, 1) = 1.0;
  return Observable(std::move(h));
}

}  // namespace

TEST_CASE("plus state against the number operator gives exactly 1/4") {
  const double v = skew_info(plus_state(), number_op(), builtin_monotone("WY")).value;
  CHECK(std::abs(v - 0.25) <= 1e-12);
}

TEST_CASE("maximally mixed state carries no coherence") {
  const DensityMatrix mixed{ComplexMatrix::Identity(4, 4) * 0.25};
  Rng rng(11);
  for (int i = 0; i < 5; ++i) {
    const Observable h = rng.random_observable(4);
    for (const MonotoneFunction& f : standard_registry()) {
      CHECK(std::abs(skew_info(mixed, h, f).value) <= 1e-12);
    }
  }
}

TEST_CASE("spectral form matches the trace-formula oracles") {
  Rng rng(2024);
  for (Eigen::Index d : {2, 3, 5}) {
    for (int i = 0; i < 25; ++i) {
      const DensityMatrix rho = rng.random_density(d);
      const Observable h = rng.random_observable(d);
      const double wy = skew_info(rho, h, builtin_monotone("WY")).value;
      CHECK(wy == doctest::Approx(wy_direct(rho, h)).epsilon(1e-10));
      for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const double v = skew_info(rho, h, builtin_monotone("WYD", a)).value;
        CHECK(v == doctest::Approx(wyd_direct(rho, h, a)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("pure states reduce to the variance") {
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    const Eigen::Index d = 2 + (i % 4);
    const DensityMatrix rho = DensityMatrix::from_pure(rng.random_pure(d));
    const Observable h = rng.random_observable(d);
    const double var = variance(rho, h);
    for (const MonotoneFunction& f : standard_registry()) {
      CHECK(skew_info(rho, h, f).value == doctest::Approx(var).epsilon(1e-10));
    }
  }
}

TEST_CASE("diagnostics expose the spectral cut") {
  const SkewResult res = skew_info(plus_state(), number_op(), builtin_monotone("WY"));
  CHECK(res.diagnostics.rank_used == 1);
  CHECK(res.f_id == "WY");
  const DensityMatrix mixed{ComplexMatrix::Identity(2, 2) * 0.5};
  CHECK(skew_info(mixed, number_op(), builtin_monotone("WY")).diagnostics.rank_used == 2);
}

TEST_CASE("dimension mismatch is rejected") {
  ComplexMatrix h3 = ComplexMatrix::Zero(3, 3);
  CHECK_THROWS_AS(skew_info(plus_state(), Observable(h3), builtin_monotone("WY")),
                  validation_error);
}

TEST_CASE("two-party gap bookkeeping on a product state") {
  Rng rng(77);
  const SubsystemLayout layout({2, 3});
  const DensityMatrix ra = rng.random_density(2);
  const DensityMatrix rb = rng.random_density(3);
  const Observable ha = rng.random_observable(2);
  const Observable hb = rng.random_observable(3);
  const DensityMatrix joint{tensor(ra.matrix(), rb.matrix())};
  const MonotoneFunction wy = builtin_monotone("WY");

  const GapResult gap = superadditivity_gap(joint, {ha, hb}, layout, wy);
  const double ia = skew_info(ra, ha, wy).value;
  const double ib = skew_info(rb, hb, wy).value;
  CHECK(gap.local_values.size() == 2);
  CHECK(gap.local_values[0] == doctest::Approx(ia).epsilon(1e-10));
  CHECK(gap.local_values[1] == doctest::Approx(ib).epsilon(1e-10));
  CHECK(gap.global_value == doctest::Approx(ia + ib).epsilon(1e-9));
  CHECK(std::abs(gap.gap) <= 1e-9);
  CHECK(gap.weak_bound_satisfied);
}

TEST_CASE("register identity ties the ensemble to a block state") {
  Rng rng(31);
  const Observable h = rng.random_observable(3);
  const MonotoneFunction f = builtin_monotone("WYD", 0.25);
  std::vector<DensityMatrix> states{rng.random_density(3), rng.random_density(3),
                                    rng.random_density(3)};
  const std::vector<double> probs{0.5, 0.3, 0.2};
  const RegisterIdentity id = register_identity_check(states, probs, h, f);
  CHECK(std::abs(id.difference) <= 1e-10);

  CHECK_THROWS_AS(register_identity_check(states, {0.5, 0.5, 0.5}, h, f), validation_error);
  CHECK_THROWS_AS(register_identity_check(states, {0.5, 0.6, -0.1}, h, f), validation_error);
}

TEST_CASE("convexity on a seeded ensemble") {
  Rng rng(13);
  const Observable h = rng.random_observable(4);
  for (const MonotoneFunction& f : standard_registry()) {
    const DensityMatrix r1 = rng.random_density(4);
    const DensityMatrix r2 = rng.random_density(4);
    const double p = 0.35;
    const DensityMatrix mix{ComplexMatrix(p * r1.matrix() + (1 - p) * r2.matrix())};
    const double lhs = skew_info(mix, h, f).value;
    const double rhs = p * skew_info(r1, h, f).value + (1 - p) * skew_info(r2, h, f).value;
    CHECK(lhs <= rhs + 1e-10);
  }
}
