#include "skew/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace skew {

MonotoneFunction::MonotoneFunction(std::string id, double f0, std::function<double(double)> eval,
                                   std::optional<double> alpha)
    : id_(std::move(id)), f0_(f0), eval_(std::move(eval)), alpha_(alpha) {
  if (!(f0_ > 0.0)) {
    throw validation_error("MonotoneFunction '" + id_ + "': f(0) = " + std::to_string(f0_) +
                           " is not regular (f(0) > 0 required)");
  }
}

double MonotoneFunction::operator()(double x) const {
  if (x < 0.0 || !std::isfinite(x)) {
    throw validation_error("MonotoneFunction '" + id_ + "': argument must be finite and >= 0");
  }
  return eval_(x);
}

namespace {

std::string format_alpha(double alpha) {
  std::ostringstream os;
  os << "WYD(" << alpha << ")";
  return os.str();
}

}  // namespace

MonotoneFunction builtin_monotone(const std::string& id, std::optional<double> alpha) {
  if (id == "WY") {
    return MonotoneFunction("WY", 0.25, [](double x) {
      const double s = 1.0 + std::sqrt(x);
      return 0.25 * s * s;
    });
  }
  if (id == "SLD") {
    return MonotoneFunction("SLD", 0.5, [](double x) { return 0.5 * (1.0 + x); });
  }
  if (id == "WYD") {
    if (!alpha || !(*alpha > 0.0) || !(*alpha < 1.0)) {
      throw validation_error("WYD requires alpha strictly inside (0, 1)");
    }
    const double a = *alpha;
    auto eval = [a](double x) {
      if (x == 0.0) {
        return a * (1.0 - a);
      }
      const double d = x - 1.0;
      if (std::abs(d) <= 1e-8) {
        return 1.0;  // removable singularity at x = 1
      }
      const double lg = std::log1p(d);
      const double na = std::expm1(a * lg);          // x^a - 1
      const double nb = std::expm1((1.0 - a) * lg);  // x^(1-a) - 1
      return a * (1.0 - a) * d * d / (na * nb);
    };
    return MonotoneFunction(format_alpha(a), a * (1.0 - a), eval, a);
  }
  throw validation_error("unknown monotone function id '" + id + "'");
}

std::vector<MonotoneFunction> standard_registry() {
  std::vector<MonotoneFunction> fs;
  fs.push_back(builtin_monotone("WY"));
  fs.push_back(builtin_monotone("SLD"));
  for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    fs.push_back(builtin_monotone("WYD", a));
  }
  return fs;
}

double weight(const MonotoneFunction& f, double x, double y) {
  if (x < 0.0 || y < 0.0) {
    throw validation_error("weight: arguments must be >= 0");
  }
  if (x > y) {
    std::swap(x, y);  // kernel is symmetric; keep the ratio in [0, 1]
  }
  if (y == 0.0) {
    return 0.0;
  }
  if (x == 0.0) {
    return 0.5 * y;
  }
  const double diff = y - x;
  if (diff <= 1e-8 * std::max({x, y, 1e-300})) {
    return 0.0;  // diagonal limit
  }
  return 0.5 * f.f_at_zero() * diff * diff / (y * f(x / y));
}

StandardFunctionReport validate_standard(const MonotoneFunction& f,
                                         const std::vector<double>& grid) {
  StandardFunctionReport rep;
  rep.normalization_violation = std::abs(f(1.0) - 1.0);

  std::vector<double> xs(grid);
  std::sort(xs.begin(), xs.end());
  double prev_val = 0.0;
  bool have_prev = false;
  for (double x : xs) {
    if (!(x > 0.0)) {
      continue;
    }
    const double fx = f(x);
    const double mirrored = x * f(1.0 / x);
    const double sym = std::abs(fx - mirrored) / std::max(1.0, std::abs(fx));
    rep.max_symmetry_violation = std::max(rep.max_symmetry_violation, sym);
    if (have_prev) {
      const double drop = (prev_val - fx) / std::max(1.0, std::abs(fx));
      rep.max_monotonicity_violation = std::max(rep.max_monotonicity_violation, drop);
    }
    prev_val = fx;
    have_prev = true;
  }
  rep.pass = rep.normalization_violation <= 1e-9 && rep.max_symmetry_violation <= 1e-9 &&
             rep.max_monotonicity_violation <= 1e-9;
  return rep;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2) {
    throw validation_error("log_grid: need 0 < lo < hi and at least two points");
  }
  std::vector<double> xs(points);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < points; ++i) {
    xs[i] = std::exp(llo + (lhi - llo) * i / (points - 1));
  }
  return xs;
}

namespace {

// Fritsch-Carlson slopes: the interpolant stays monotone wherever the data is.
struct Pchip {
  std::vector<double> x, y, d;

  double eval(double q) const {
    const auto it = std::upper_bound(x.begin(), x.end(), q);
    std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    if (i >= x.size() - 1) {
      i = x.size() - 2;
    }
    const double h = x[i + 1] - x[i];
    const double t = (q - x[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y[i] + h10 * h * d[i] + h01 * y[i + 1] + h11 * h * d[i + 1];
  }
};

Pchip build_pchip(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  Pchip p{x, y, std::vector<double>(n, 0.0)};
  std::vector<double> slope(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    slope[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  }
  p.d[0] = slope[0];
  p.d[n - 1] = slope[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (slope[i - 1] * slope[i] <= 0.0) {
      p.d[i] = 0.0;
    } else {
      const double w1 = 2 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
      const double w2 = (x[i + 1] - x[i]) + 2 * (x[i] - x[i - 1]);
      p.d[i] = (w1 + w2) / (w1 / slope[i - 1] + w2 / slope[i]);
    }
  }
  return p;
}

}  // namespace

MonotoneFunction table_monotone(const std::string& name, double f0,
                                std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) {
    throw validation_error("table '" + name + "': at least two samples required");
  }
  std::sort(samples.begin(), samples.end());
  std::vector<double> xs, ys;
  xs.reserve(samples.size() + 1);
  ys.reserve(samples.size() + 1);
  if (samples.front().first > 0.0) {
    xs.push_back(0.0);
    ys.push_back(f0);
  }
  for (const auto& [x, y] : samples) {
    if (x < 0.0) {
      throw validation_error("table '" + name + "': sample points must be >= 0");
    }
    if (!xs.empty() && x == xs.back()) {
      throw validation_error("table '" + name + "': duplicate sample point");
    }
    if (!(y > 0.0) && x > 0.0) {
      throw validation_error("table '" + name + "': sampled values must be positive");
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.back() < 1.0) {
    throw validation_error("table '" + name + "': samples must cover x = 1");
  }

  auto interp = std::make_shared<Pchip>(build_pchip(xs, ys));
  const double x_max = xs.back();
  auto eval = [interp, x_max](double x) {
    if (x <= x_max) {
      return interp->eval(x);
    }
    return x * interp->eval(1.0 / x);  // fold through f(x) = x f(1/x)
  };

  MonotoneFunction f(name, f0, eval);
  std::vector<double> grid(xs.begin(), xs.end());
  grid.push_back(1.0);
  const StandardFunctionReport rep = validate_standard(f, grid);
  if (!rep.pass) {
    throw validation_error("table '" + name + "': samples violate the standard-function axioms");
  }
  return f;
}

}  // namespace skew
