#pragma once

#include "skew/qmat.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skew {

// A regular standard operator monotone function: f(1) = 1, f(x) = x f(1/x),
// nondecreasing on [0, inf), with f(0) > 0. Regularity is enforced at
// construction; the other axioms are checked numerically by
// validate_standard (and at load time for table-backed functions).
class MonotoneFunction {
 public:
  MonotoneFunction(std::string id, double f0, std::function<double(double)> eval,
                   std::optional<double> alpha = std::nullopt);

  const std::string& id() const { return id_; }
  double f_at_zero() const { return f0_; }
  std::optional<double> alpha() const { return alpha_; }
  double operator()(double x) const;

 private:
  std::string id_;
  double f0_;
  std::function<double(double)> eval_;
  std::optional<double> alpha_;
};

// Builtins: "WY" ((1+sqrt(x))/2)^2, "SLD" (1+x)/2, and "WYD" which requires
// alpha in (0, 1).
MonotoneFunction builtin_monotone(const std::string& id,
                                  std::optional<double> alpha = std::nullopt);

// Monotone-cubic (Fritsch-Carlson) interpolant through the samples, extended
// beyond the largest sample by the symmetry f(x) = x f(1/x). The table must
// reach x = 1, and the standard-function axioms are re-checked on the sample
// grid before the function is accepted.
MonotoneFunction table_monotone(const std::string& name, double f0,
                                std::vector<std::pair<double, double>> samples);

// The function set exercised by the verification suites.
std::vector<MonotoneFunction> standard_registry();

// Weight kernel w(x, y) = f(0)/2 * (x-y)^2 / (y f(x/y)) extended by its
// limits: w(x, x) = 0, w(x, 0) = x/2, w(0, 0) = 0. Arguments within
// 1e-8 * max(x, y) of each other take the diagonal limit.
double weight(const MonotoneFunction& f, double x, double y);

struct StandardFunctionReport {
  double normalization_violation = 0.0;  // |f(1) - 1|
  double max_symmetry_violation = 0.0;   // |f(x) - x f(1/x)|, entrywise-relative
  double max_monotonicity_violation = 0.0;
  bool pass = false;  // all three within 1e-9
};

StandardFunctionReport validate_standard(const MonotoneFunction& f,
                                         const std::vector<double>& grid);

std::vector<double> log_grid(double lo, double hi, int points);

}  // namespace skew
