#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skew/monotone.hpp"
#include "skew/qmat.hpp"

#include <cmath>

using namespace skew;

TEST_CASE("builtin normalization and f(0)") {
  const MonotoneFunction wy = builtin_monotone("WY");
  const MonotoneFunction sld = builtin_monotone("SLD");
  CHECK(wy.f_at_zero() == 0.25);
  CHECK(sld.f_at_zero() == 0.5);
  CHECK(builtin_monotone("WYD", 0.25).f_at_zero() == doctest::Approx(0.1875).epsilon(1e-15));
  CHECK(wy(1.0) == 1.0);
  CHECK(sld(1.0) == 1.0);
  CHECK(wy(4.0) == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(sld(3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(builtin_monotone("nope"), validation_error);
  CHECK_THROWS_AS(builtin_monotone("WYD", 0.0), validation_error);
  CHECK_THROWS_AS(builtin_monotone("WYD", 1.0), validation_error);
}

TEST_CASE("wyd family: symmetry in alpha, removable singularity, half point") {
  const MonotoneFunction wy = builtin_monotone("WY");
  for (double a : {0.1, 0.25, 0.4}) {
    const MonotoneFunction fa = builtin_monotone("WYD", a);
    const MonotoneFunction fb = builtin_monotone("WYD", 1.0 - a);
    for (double x : {0.01, 0.3, 2.0, 50.0}) {
      CHECK(fa(x) == doctest::Approx(fb(x)).epsilon(1e-13));
    }
  }
  const MonotoneFunction fh = builtin_monotone("WYD", 0.5);
  for (double x : {1e-5, 0.2, 1.0, 7.0, 1e5}) {
    CHECK(fh(x) == doctest::Approx(wy(x)).epsilon(1e-12));
  }
  CHECK(builtin_monotone("WYD", 0.3)(1.0 + 1e-9) == 1.0);
  CHECK(builtin_monotone("WYD", 0.3)(1.0 - 1e-9) == 1.0);
  CHECK(builtin_monotone("WYD", 0.3)(0.0) == doctest::Approx(0.21).epsilon(1e-15));
}

TEST_CASE("evaluation domain") {
  const MonotoneFunction wy = builtin_monotone("WY");
  CHECK_THROWS_AS(wy(-1.0), validation_error);
  CHECK_THROWS_AS(wy(std::nan("")), validation_error);
}

TEST_CASE("weight kernel pinned values") {
  const MonotoneFunction wy = builtin_monotone("WY");
  // f(4) = 9/4, so w(1, 1/4) = (1/8)(3/4)^2 / ((1/4)(9/4)) = 1/8
  CHECK(weight(wy, 1.0, 0.25) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(weight(wy, 0.25, 1.0) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(weight(wy, 0.8, 0.0) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(weight(wy, 0.0, 0.8) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(weight(wy, 0.0, 0.0) == 0.0);
  CHECK(weight(wy, 0.5, 0.5) == 0.0);
  // closed form: w_WY(x,y) = (sqrt(x) - sqrt(y))^2 / 2
  for (double x : {0.1, 0.9, 1.7}) {
    for (double y : {0.05, 0.4, 2.0}) {
      const double closed = 0.5 * std::pow(std::sqrt(x) - std::sqrt(y), 2);
      CHECK(weight(wy, x, y) == doctest::Approx(closed).epsilon(1e-13));
    }
  }
}

TEST_CASE("registry members satisfy the standard axioms") {
  const auto grid = log_grid(1e-6, 1e6, 121);
  CHECK(grid.front() == doctest::Approx(1e-6).epsilon(1e-12));
  CHECK(grid.back() == doctest::Approx(1e6).epsilon(1e-12));
  const auto registry = standard_registry();
  CHECK(registry.size() == 7);
  for (const MonotoneFunction& f : registry) {
    const StandardFunctionReport r = validate_standard(f, grid);
    CHECK(r.pass);
    CHECK(r.normalization_violation <= 1e-12);
    CHECK(r.max_symmetry_violation <= 1e-9);
    CHECK(r.max_monotonicity_violation <= 1e-9);
  }
}

TEST_CASE("table-backed function reproduces its source on and off the nodes") {
  std::vector<std::pair<double, double>> samples;
  for (int k = -24; k <= 24; ++k) {
    const double x = std::pow(10.0, k / 8.0);
    const double s = 0.5 * (1.0 + std::sqrt(x));
    samples.emplace_back(x, s * s);
  }
  const MonotoneFunction ft = table_monotone("wy-table", 0.25, samples);
  const MonotoneFunction wy = builtin_monotone("WY");
  CHECK(ft(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  for (double x : {0.013, 0.77, 3.1, 41.0, 810.0}) {
    CHECK(ft(x) == doctest::Approx(wy(x)).epsilon(1e-4));  // pchip between nodes
  }
  // beyond the grid the symmetry fold takes over
  CHECK(ft(1e7) == doctest::Approx(1e7 * ft(1e-7)).epsilon(1e-12));
}

TEST_CASE("bad tables are rejected") {
  using samples_t = std::vector<std::pair<double, double>>;
  CHECK_THROWS_AS(table_monotone("dup", 0.25, samples_t{{1.0, 1.0}, {1.0, 1.1}, {2.0, 1.5}}),
                  validation_error);
  CHECK_THROWS_AS(table_monotone("neg", 0.25, samples_t{{-1.0, 1.0}, {1.0, 1.0}}),
                  validation_error);
  CHECK_THROWS_AS(table_monotone("missing-one", 0.25, samples_t{{0.1, 0.3}, {0.5, 0.7}}),
                  validation_error);
  // decreasing data cannot be operator monotone
  CHECK_THROWS_AS(table_monotone("dec", 0.25, samples_t{{0.5, 2.0}, {1.0, 1.0}, {2.0, 0.5}}),
                  validation_error);
  CHECK_THROWS_AS(table_monotone("bad-f0", 0.0, samples_t{{1.0, 1.0}, {2.0, 1.5}}),
                  validation_error);
}
