#include "skew/suites.hpp"

#include "skew/aberg.hpp"
#include "skew/clocknet.hpp"
#include "skew/random_gen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skew {

CheckResult& SuiteReport::add(const std::string& name, int instances, double max_violation,
                              double tolerance) {
  checks.push_back(CheckResult{name, instances, max_violation, tolerance,
                               max_violation <= tolerance});
  return checks.back();
}

const CheckResult& SuiteReport::get(const std::string& name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) {
      return c;
    }
  }
  throw std::out_of_range("suite '" + suite + "' has no check named '" + name + "'");
}

void SuiteReport::finalize() {
  pass = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

const std::vector<double>& wyd_alphas() {
  static const std::vector<double> as{0.1, 0.25, 0.5, 0.75, 0.9};
  return as;
}

Observable qubit_number() {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(1, 1) = 1.0;
  return Observable(std::move(h));
}

// Reciprocal-closed log grid of exact WY samples: x and 1/x are both nodes,
// so the table's own symmetry validation sees node-exact values.
std::vector<std::pair<double, double>> wy_table_samples() {
  std::vector<std::pair<double, double>> pts;
  for (int k = -24; k <= 24; ++k) {
    const double x = std::pow(10.0, k / 8.0);
    const double s = 1.0 + std::sqrt(x);
    pts.emplace_back(x, 0.25 * s * s);
  }
  return pts;
}

}  // namespace

SuiteReport run_axioms(std::uint64_t seed, int count) {
  SuiteReport rep{"axioms", seed, count, {}, false};
  Rng rng(seed);
  const auto registry = standard_registry();
  const MonotoneFunction wy = builtin_monotone("WY");

  {
    const auto grid = log_grid(1e-6, 1e6, 121);
    double worst = 0.0;
    for (const MonotoneFunction& f : registry) {
      const StandardFunctionReport r = validate_standard(f, grid);
      worst = std::max({worst, r.normalization_violation, r.max_symmetry_violation,
                        r.max_monotonicity_violation});
    }
    rep.add("standard_axioms", static_cast<int>(registry.size()), worst, 1e-9);
  }

  {
    double worst = 0.0;
    worst = std::max(worst, std::abs(wy.f_at_zero() - 0.25));
    worst = std::max(worst, std::abs(builtin_monotone("SLD").f_at_zero() - 0.5));
    worst = std::max(worst, std::abs(builtin_monotone("WYD", 0.25).f_at_zero() - 0.1875));
    worst = std::max(worst, std::abs(wy(1.0) - 1.0));
    worst = std::max(worst, std::abs(weight(wy, 1.0, 0.25) - 0.125));
    worst = std::max(worst, std::abs(weight(wy, 0.8, 0.0) - 0.4));
    worst = std::max(worst, std::abs(weight(wy, 0.0, 0.0)));
    rep.add("pinned_values", 7, worst, 1e-15);
  }

  {
    double worst_closed = 0.0, worst_sym = 0.0;
    for (int i = 0; i < count; ++i) {
      const double x = (i % 7 == 0) ? 0.0 : 2.0 * rng.uniform();
      const double y = (i % 11 == 0) ? 0.0 : 2.0 * rng.uniform();
      const double closed = 0.5 * std::pow(std::sqrt(x) - std::sqrt(y), 2);
      const double w = weight(wy, x, y);
      // the diagonal-limit branch rounds tiny kernels to 0; compare outside it
      if (std::abs(x - y) > 1e-6 * std::max(x, y)) {
        worst_closed = std::max(worst_closed, std::abs(w - closed));
      }
      const MonotoneFunction& f = registry[i % registry.size()];
      worst_sym = std::max(worst_sym, std::abs(weight(f, x, y) - weight(f, y, x)));
    }
    rep.add("wy_weight_closed_form", count, worst_closed, 1e-12);
    rep.add("weight_symmetry", count, worst_sym, 1e-12);
  }

  {
    double worst = 0.0;
    const int n = std::min(count, 50);
    for (int i = 0; i < n; ++i) {
      const double x = 0.1 + 2.0 * rng.uniform();
      for (const MonotoneFunction& f : registry) {
        // WYD(a) approaches the axis limit like (y/x)^min(a,1-a), so probe
        // deep enough for the slowest member of the registry
        const double w = weight(f, x, x * 1e-100);
        worst = std::max(worst, std::abs(w / (0.5 * x) - 1.0));
      }
    }
    rep.add("weight_axis_continuity", n * static_cast<int>(registry.size()), worst, 1e-6);
  }

  {
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
      const double a = 0.02 + 0.96 * rng.uniform();
      const double x = std::exp((rng.uniform() * 2.0 - 1.0) * std::log(1e4));
      const MonotoneFunction fa = builtin_monotone("WYD", a);
      const MonotoneFunction fb = builtin_monotone("WYD", 1.0 - a);
      worst = std::max(worst, std::abs(fa(x) - fb(x)) / std::max(1.0, std::abs(fa(x))));
    }
    rep.add("wyd_alpha_symmetry", count, worst, 1e-12);

    double worst_half = 0.0;
    const MonotoneFunction fh = builtin_monotone("WYD", 0.5);
    for (double x : log_grid(1e-6, 1e6, 121)) {
      worst_half = std::max(worst_half, std::abs(fh(x) - wy(x)) / std::max(1.0, wy(x)));
    }
    rep.add("wyd_half_equals_wy", 121, worst_half, 1e-12);
  }

  {
    double worst_wy = 0.0, worst_wyd = 0.0;
    int n_wy = 0, n_wyd = 0;
    for (Eigen::Index d : {2, 3, 4, 6, 8}) {
      for (int i = 0; i < count; ++i) {
        const DensityMatrix rho = rng.random_density(d);
        const Observable h = rng.random_observable(d);
        worst_wy = std::max(worst_wy, rel_diff(skew_info(rho, h, wy).value, wy_direct(rho, h)));
        ++n_wy;
        for (double a : wyd_alphas()) {
          const MonotoneFunction fa = builtin_monotone("WYD", a);
          worst_wyd =
              std::max(worst_wyd, rel_diff(skew_info(rho, h, fa).value, wyd_direct(rho, h, a)));
          ++n_wyd;
        }
      }
    }
    rep.add("oracle_wy", n_wy, worst_wy, 1e-9);
    rep.add("oracle_wyd", n_wyd, worst_wyd, 1e-9);
  }

  {
    double worst = 0.0;
    int n = 0;
    const Eigen::Index dims[] = {2, 3, 4, 6, 8};
    for (int i = 0; i < count; ++i) {
      const Eigen::Index d = dims[i % 5];
      const DensityMatrix rho = DensityMatrix::from_pure(rng.random_pure(d));
      const Observable h = rng.random_observable(d);
      const double var = variance(rho, h);
      for (const MonotoneFunction& f : registry) {
        worst = std::max(worst, rel_diff(skew_info(rho, h, f).value, var));
        ++n;
      }
    }
    rep.add("pure_state_variance", n, worst, 1e-9);
  }

  {
    double worst = 0.0;
    const Eigen::Index dims[] = {2, 3, 4, 6};
    for (int i = 0; i < count; ++i) {
      const Eigen::Index d = dims[i % 4];
      const DensityMatrix rho = rng.random_density(d);
      // H commuting with rho: a polynomial in rho
      const ComplexMatrix& r = rho.matrix();
      const Observable h(ComplexMatrix(1.5 * r + 0.7 * r * r));
      const MonotoneFunction& f = registry[i % registry.size()];
      worst = std::max(worst, std::abs(skew_info(rho, h, f).value));
    }
    rep.add("commuting_vanishes", count, worst, 1e-12);
  }

  {
    const MonotoneFunction ft = table_monotone("wy-table", 0.25, wy_table_samples());
    std::vector<double> nodes;
    for (const auto& [x, fx] : wy_table_samples()) {
      nodes.push_back(x);
    }
    const StandardFunctionReport r = validate_standard(ft, nodes);
    rep.add("table_function_loads", 1,
            std::max({r.normalization_violation, r.max_symmetry_violation,
                      r.max_monotonicity_violation}),
            1e-9);

    const DensityMatrix rho = rng.random_density(4);
    const Observable h = rng.random_observable(4);
    rep.add("table_tracks_wy", 1,
            rel_diff(skew_info(rho, h, ft).value, skew_info(rho, h, wy).value), 1e-4);
  }

  rep.finalize();
  return rep;
}

SuiteReport run_monotonicity(std::uint64_t seed, int count) {
  SuiteReport rep{"monotonicity", seed, count, {}, false};
  Rng rng(seed);
  const auto registry = standard_registry();

  {
    double worst = 0.0;
    const std::pair<Eigen::Index, Eigen::Index> shapes[] = {{2, 2}, {2, 3}, {3, 2},
                                                            {3, 3}, {4, 2}, {2, 4}};
    for (int i = 0; i < count; ++i) {
      const auto [da, db] = shapes[i % 6];
      const SubsystemLayout layout({da, db});
      const DensityMatrix rho = rng.random_density(da * db);
      const Observable ha = rng.random_observable(da);
      const Observable hb = rng.random_observable(db);
      const MonotoneFunction& f = registry[i % registry.size()];
      const double global =
          skew_info(rho, embed_local_observables({ha, hb}, layout), f).value;
      const double local = skew_info(partial_trace(rho, layout, {0}), ha, f).value;
      worst = std::max(worst, local - global);
    }
    rep.add("partial_trace_monotone", count, worst, 1e-9);
  }

  {
    double worst_gate = 0.0, worst_mono = 0.0;
    const Eigen::Index dims[] = {2, 3, 4, 6};
    for (int i = 0; i < count; ++i) {
      const Eigen::Index d = dims[i % 4];
      const Observable h = random_integer_hamiltonian(rng, d, std::min<int>(3, d));
      const QuantumChannel ch = random_covariant_channel(rng, h, 2 + (i % 2));
      const CovarianceReport gate = is_covariant(ch, h, h);
      worst_gate = std::max(worst_gate, gate.max_deviation);
      if (!gate.covariant) {
        continue;  // never assert monotonicity on a rejected channel
      }
      const DensityMatrix rho = rng.random_density(d);
      const MonotoneFunction& f = registry[i % registry.size()];
      const double before = skew_info(rho, h, f).value;
      const double after = skew_info(apply(ch, rho), h, f).value;
      worst_mono = std::max(worst_mono, after - before);
    }
    rep.add("covariance_gate", count, worst_gate, 1e-9);
    rep.add("covariant_channel_monotone", count, worst_mono, 1e-9);
  }

  {
    double worst_sel = 0.0, worst_det = 0.0, worst_charge = 0.0;
    const Eigen::Index dims[] = {2, 3, 4, 6};
    for (int i = 0; i < count; ++i) {
      const Eigen::Index d = dims[i % 4];
      const Observable h = random_integer_hamiltonian(rng, d, 2);
      const Instrument inst = random_commuting_instrument(rng, h, 2 + (i % 2));
      const DensityMatrix rho = rng.random_density(d);
      const MonotoneFunction& f = registry[i % registry.size()];

      const SelectiveMonotonicityResult sel = selective_monotonicity_check(inst, rho, h, f);
      worst_sel = std::max(worst_sel, sel.after_avg - sel.before);

      std::vector<ComplexMatrix> all_kraus;
      for (const QuantumChannel& b : inst.branches()) {
        for (const ComplexMatrix& k : b.kraus()) {
          all_kraus.push_back(k);
        }
      }
      const QuantumChannel total(std::move(all_kraus));
      const DensityMatrix out = apply(total, rho);
      worst_det = std::max(worst_det, skew_info(out, h, f).value - sel.before);
      worst_charge = std::max(
          worst_charge, std::abs((out.matrix() * h.matrix()).trace().real() -
                                 (rho.matrix() * h.matrix()).trace().real()));
    }
    rep.add("instrument_selective_monotone", count, worst_sel, 1e-9);
    rep.add("instrument_deterministic_monotone", count, worst_det, 1e-9);
    rep.add("instrument_preserves_charge", count, worst_charge, 1e-10);
  }

  {
    double worst = 0.0;
    const Eigen::Index dims[] = {2, 3, 4, 6};
    for (int i = 0; i < count; ++i) {
      const Eigen::Index d = dims[i % 4];
      const Observable h = random_integer_hamiltonian(rng, d, 2);
      const ComplexMatrix u = random_commuting_unitary(rng, h);
      const DensityMatrix rho = rng.random_density(d);
      const MonotoneFunction& f = registry[i % registry.size()];
      const DensityMatrix rotated(ComplexMatrix(u * rho.matrix() * u.adjoint()));
      worst = std::max(worst,
                       rel_diff(skew_info(rotated, h, f).value, skew_info(rho, h, f).value));
    }
    rep.add("commuting_unitary_invariance", count, worst, 1e-9);
  }

  {
    // Precondition gate: a manifestly non-covariant fixture must be rejected
    // before any monotonicity claim is made about it.
    const ComplexMatrix had = hadamard2();
    const Observable h = qubit_number();
    const QuantumChannel ch{std::vector<ComplexMatrix>{had}};
    const CovarianceReport gate = is_covariant(ch, h, h);
    bool threw = false;
    try {
      commuting_measurement({had}, h);
    } catch (const validation_error&) {
      threw = true;
    }
    rep.add("noncovariant_fixture_rejected", 2, (!gate.covariant && threw) ? 0.0 : 1.0, 0.0);
  }

  rep.finalize();
  return rep;
}

SuiteReport run_convexity(std::uint64_t seed, int count) {
  SuiteReport rep{"convexity", seed, count, {}, false};
  Rng rng(seed);
  const auto registry = standard_registry();
  const Eigen::Index dims[] = {2, 3, 4, 6};

  {
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
      const Eigen::Index d = dims[i % 4];
      const int n_states = 2 + (i % 3);
      const Observable h = rng.random_observable(d);
      const MonotoneFunction& f = registry[i % registry.size()];
      std::vector<DensityMatrix> states;
      std::vector<double> probs;
      double norm = 0.0;
      for (int s = 0; s < n_states; ++s) {
        states.push_back(rng.random_density(d));
        probs.push_back(-std::log(std::max(rng.uniform(), 1e-12)));
        norm += probs.back();
      }
      ComplexMatrix mix = ComplexMatrix::Zero(d, d);
      double rhs = 0.0;
      for (int s = 0; s < n_states; ++s) {
        probs[static_cast<std::size_t>(s)] /= norm;
        mix += probs[static_cast<std::size_t>(s)] * states[static_cast<std::size_t>(s)].matrix();
        rhs += probs[static_cast<std::size_t>(s)] *
               skew_info(states[static_cast<std::size_t>(s)], h, f).value;
      }
      const double lhs = skew_info(DensityMatrix(std::move(mix)), h, f).value;
      worst = std::max(worst, lhs - rhs);
    }
    rep.add("convexity", count, worst, 1e-9);
  }

  {
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
      const Eigen::Index d = dims[i % 4];
      const int n_states = 2 + (i % 2);
      const Observable h = rng.random_observable(d);
      const MonotoneFunction& f = registry[(i + 3) % registry.size()];
      std::vector<DensityMatrix> states;
      std::vector<double> probs;
      double norm = 0.0;
      for (int s = 0; s < n_states; ++s) {
        states.push_back(rng.random_density(d));
        probs.push_back(-std::log(std::max(rng.uniform(), 1e-12)));
        norm += probs.back();
      }
      for (double& p : probs) {
        p /= norm;
      }
      const RegisterIdentity id = register_identity_check(states, probs, h, f);
      worst = std::max(worst, std::abs(id.difference) / std::max(1.0, std::abs(id.lhs)));
    }
    rep.add("register_identity", count, worst, 1e-9);
  }

  rep.finalize();
  return rep;
}

SuiteReport run_additivity(std::uint64_t seed, int count) {
  SuiteReport rep{"additivity", seed, count, {}, false};
  Rng rng(seed);
  const auto registry = standard_registry();
  const std::pair<Eigen::Index, Eigen::Index> shapes[] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}};

  double worst_add = 0.0, worst_gap = 0.0;
  for (int i = 0; i < count; ++i) {
    const auto [da, db] = shapes[i % 5];
    const SubsystemLayout layout({da, db});
    const DensityMatrix ra = rng.random_density(da);
    const DensityMatrix rb = rng.random_density(db);
    const Observable ha = rng.random_observable(da);
    const Observable hb = rng.random_observable(db);
    const MonotoneFunction& f = registry[i % registry.size()];
    const DensityMatrix joint{tensor(ra.matrix(), rb.matrix())};

    const double ia = skew_info(ra, ha, f).value;
    const double ib = skew_info(rb, hb, f).value;
    const GapResult gap = superadditivity_gap(joint, {ha, hb}, layout, f);
    worst_add = std::max(worst_add,
                         std::abs(gap.global_value - ia - ib) /
                             std::max({1.0, std::abs(gap.global_value), std::abs(ia + ib)}));
    worst_gap = std::max(worst_gap, std::abs(gap.gap) / std::max(1.0, gap.global_value));
  }
  rep.add("product_additivity", count, worst_add, 1e-9);
  rep.add("product_gap_vanishes", count, worst_gap, 1e-9);

  rep.finalize();
  return rep;
}

SuiteReport run_weak_superadditivity(std::uint64_t seed, int count) {
  SuiteReport rep{"weak-superadditivity", seed, count, {}, false};
  Rng rng(seed);
  const auto registry = standard_registry();

  {
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
      const int k = 2 + (i % 3);
      std::vector<Eigen::Index> dims;
      for (int j = 0; j < k; ++j) {
        dims.push_back(k == 4 ? 2 : 2 + ((i + j) % 2));
      }
      const SubsystemLayout layout(dims);
      const DensityMatrix rho = rng.random_density(layout.total_dim());
      std::vector<Observable> hs;
      for (int j = 0; j < k; ++j) {
        hs.push_back(rng.random_observable(layout.dim(static_cast<std::size_t>(j))));
      }
      const MonotoneFunction& f = registry[i % registry.size()];
      const GapResult gap = superadditivity_gap(rho, hs, layout, f);
      worst = std::max(worst, gap.local_sum / k - gap.global_value);
    }
    rep.add("weak_bound_random", count, worst, 1e-10);
  }

  {
    double worst = 0.0;
    for (const SweepRow& row : fig1_sweep(1, 30, builtin_monotone("WY"))) {
      worst = std::max(worst, row.local_sum / 2.0 - row.global_value);
    }
    rep.add("weak_bound_protocol", 30, worst, 1e-10);
  }

  rep.finalize();
  return rep;
}

SuiteReport run_aberg(std::uint64_t seed, int count) {
  SuiteReport rep{"aberg", seed, count, {}, false};
  Rng rng(seed);
  const MonotoneFunction wy = builtin_monotone("WY");
  const auto registry = standard_registry();

  {
    double worst = 0.0;
    for (Eigen::Index d : {2, 3, 4}) {
      const Eigen::Index window = 12;
      const ComplexMatrix u = rng.random_unitary(d);
      const ComplexMatrix v = aberg_unitary(u, window);
      ComplexMatrix hs = ComplexMatrix::Zero(d, d);
      for (Eigen::Index j = 0; j < d; ++j) {
        hs(j, j) = static_cast<double>(j);
      }
      const ComplexMatrix ht =
          tensor(hs, ComplexMatrix::Identity(window, window)) +
          tensor(ComplexMatrix::Identity(d, d), LadderAncilla{window, 0}.hamiltonian());
      worst = std::max(worst, (v * ht - ht * v).cwiseAbs().maxCoeff());
    }
    rep.add("energy_commutator", 3, worst, 1e-10);
  }

  {
    double worst_norm = 0.0, worst_cat = 0.0;
    const int n_cfg = std::min(count, 30);
    for (int i = 0; i < n_cfg; ++i) {
      AbergConfig cfg;
      const Eigen::Index d = 2 + (i % 2);
      cfg.unitary = rng.random_unitary(d);
      cfg.m = 1 + (i % 6);
      cfg.n_systems = 1 + (i % 3);
      const ProtocolResult run = run_protocol(cfg);
      worst_norm = std::max({worst_norm, run.norm_drift, run.guard_amplitude});
      worst_cat = std::max(worst_cat, catalytic_check(cfg).max_diff);
    }
    rep.add("protocol_norm_guard", n_cfg, worst_norm, 1e-12);
    rep.add("catalytic_moments", n_cfg, worst_cat, 1e-12);
  }

  {
    double worst = 0.0;
    for (int m : {2, 4, 8}) {
      AbergConfig cfg;
      cfg.unitary = hadamard2();
      cfg.m = m;
      cfg.n_systems = 3;
      const ProtocolResult run = run_protocol(cfg);
      AbergConfig one = cfg;
      one.n_systems = 1;
      const ProtocolResult first = run_protocol(one);
      for (const DensityMatrix& marg : run.marginals) {
        worst = std::max(
            worst, (marg.matrix() - first.marginals.front().matrix()).cwiseAbs().maxCoeff());
      }
    }
    rep.add("marginal_stationarity", 9, worst, 1e-12);
  }

  {
    double worst = 0.0;
    const int n_cfg = std::min(count, 40);
    for (int i = 0; i < n_cfg; ++i) {
      const Eigen::Index d = 2 + (i % 2);
      const ComplexMatrix u = rng.random_unitary(d);
      const Eigen::Index margin = d;
      const Eigen::Index inner = 3 + (i % 4);
      const Eigen::Index window = inner + 2 * margin;

      // random interior ancilla state with a full safety margin, so the
      // truncated conjugation matches the ideal-ladder moment formula exactly
      const DensityMatrix sigma_small = rng.random_density(inner);
      ComplexMatrix sigma = ComplexMatrix::Zero(window, window);
      sigma.block(margin, margin, inner, inner) = sigma_small.matrix();

      const DensityMatrix rho = rng.random_density(d);
      const ComplexMatrix v = aberg_unitary(u, window);
      const ComplexMatrix joint = v * tensor(rho.matrix(), sigma) * v.adjoint();
      const ComplexMatrix direct = partial_trace(joint, SubsystemLayout({d, window}), {0});
      const ComplexMatrix via_moments =
          reduced_channel_from_state(u, sigma).apply_to(rho.matrix());
      worst = std::max(worst, (direct - via_moments).cwiseAbs().maxCoeff());
    }
    rep.add("reduced_channel_match", n_cfg, worst, 1e-10);
  }

  {
    double worst = 0.0;
    for (int m = 1; m <= 50; ++m) {
      worst = std::max(worst, two_qubit_family(m).max_deviation);
    }
    rep.add("two_qubit_closed_form", 50, worst, 1e-12);
  }

  {
    const auto rows = fig1_sweep(1, 50, wy);
    rep.add("fig1_symmetric_point", 1, std::abs(rows.front().gap), 1e-10);

    double gap_max = -1.0;
    int argmax = 0;
    double peak = 0.0;
    for (const SweepRow& r : rows) {
      if (r.m >= 2) {
        gap_max = std::max(gap_max, r.gap);
        if (std::abs(r.gap) > peak) {
          peak = std::abs(r.gap);
          argmax = r.m;
        }
      }
    }
    rep.add("fig1_gap_negative", 49, std::max(0.0, gap_max), 0.0);
    rep.add("fig1_peak_at_4", 1, argmax == 4 ? 0.0 : 1.0, 0.0);
    rep.add("fig1_peak_dominates", 2,
            std::max({0.0, std::abs(rows[1].gap) - peak, std::abs(rows[19].gap) - peak}), 0.0);

    double tail = 0.0;
    for (std::size_t i = 3; i + 1 < rows.size(); ++i) {
      tail = std::max(tail, std::abs(rows[i + 1].gap) - std::abs(rows[i].gap));
    }
    rep.add("fig1_tail_monotone", 46, tail, 1e-12);

    const auto far = fig1_sweep(200, 200, wy);
    rep.add("fig1_decay", 1, std::max(0.0, std::abs(far.front().gap) - peak / 10.0), 0.0);
  }

  {
    double worst = 0.0;
    const Observable hq = qubit_number();
    for (int n = 1; n <= 6; ++n) {
      for (int m : {2, 4, 8}) {
        AbergConfig cfg;
        cfg.unitary = hadamard2();
        cfg.m = m;
        cfg.n_systems = n;
        const ProtocolResult run = run_protocol(cfg);
        std::vector<Eigen::Index> dims(static_cast<std::size_t>(n), 2);
        std::vector<Observable> hs(static_cast<std::size_t>(n), hq);
        const double g_full =
            skew_info(run.system_state,
                      embed_local_observables(hs, SubsystemLayout(dims)), wy)
                .value;
        const double g_sym = protocol_global_skew(hadamard2(), m, n, wy);
        worst = std::max(worst, std::abs(g_full - g_sym));

        const DensityMatrix marg_sym =
            symmetric_qubit_marginal(symmetric_system_state(hadamard2(), m, n), n);
        worst = std::max(
            worst, (run.marginals.front().matrix() - marg_sym.matrix()).cwiseAbs().maxCoeff());
      }
    }
    rep.add("symmetric_reduction_matches", 18, worst, 1e-10);
  }

  {
    double worst_bound = 0.0, worst_slope = 0.0;
    const Observable hq = qubit_number();
    const LadderAncilla anc{10, 0};
    const EtaState eta{8, 1};
    const DensityMatrix eta_state = DensityMatrix::from_pure(eta.vector_in(anc));
    const Observable ha(anc.hamiltonian());
    for (const MonotoneFunction& f : registry) {
      const double resource = skew_info(eta_state, ha, f).value;
      const int n_top = f.id() == "WY" ? 32 : 8;
      double local_ref = -1.0;
      for (int n = 1; n <= n_top; n = (n < 8 ? n + 1 : n * 2)) {
        const DensityMatrix dicke = symmetric_system_state(hadamard2(), 8, n);
        const double global = skew_info(dicke, symmetric_hamiltonian(n), f).value;
        worst_bound = std::max(worst_bound, global - resource);
        const double local = skew_info(symmetric_qubit_marginal(dicke, n), hq, f).value;
        if (local_ref < 0.0) {
          local_ref = local;
        }
        worst_slope = std::max(worst_slope, std::abs(local - local_ref));
      }
    }
    rep.add("global_bounded_by_resource", static_cast<int>(registry.size()), worst_bound, 1e-9);
    rep.add("local_sum_slope_constant", static_cast<int>(registry.size()), worst_slope, 1e-9);
  }

  {
    const MultipartiteResult res = multipartite_violation(8, wy, 64);
    double worst = std::abs(res.ancilla_value - 5.25);
    worst = std::max(worst, std::abs(res.local_value - (8.0 - std::sqrt(15.0)) / 32.0));
    worst = std::max(worst, res.n_star == 41 ? 0.0 : 1.0);
    worst = std::max(worst, res.violation_found ? 0.0 : 1.0);
    rep.add("multipartite_m8_pinned", 4, worst, 1e-10);
  }

  rep.finalize();
  return rep;
}

SuiteReport run_clocks(std::uint64_t seed, int count) {
  SuiteReport rep{"clocks", seed, count, {}, false};
  Rng rng(seed);
  const MonotoneFunction wy = builtin_monotone("WY");
  const auto registry = standard_registry();

  {
    int unsound = 0;
    for (int i = 0; i < count; ++i) {
      const int k = 2 + (i % 3);
      std::vector<Eigen::Index> dims;
      for (int j = 0; j < k; ++j) {
        dims.push_back(k == 4 ? 2 : 2 + ((i + j) % 2));
      }
      const SubsystemLayout layout(dims);
      const DensityMatrix rho = rng.random_density(layout.total_dim());
      std::vector<Observable> hs;
      for (int j = 0; j < k; ++j) {
        hs.push_back(rng.random_observable(layout.dim(static_cast<std::size_t>(j))));
      }
      const MonotoneFunction& f = registry[i % registry.size()];

      double stat = 0.0;
      for (int j = 0; j < k; ++j) {
        stat += skew_info(partial_trace(rho, layout, {static_cast<std::size_t>(j)}),
                          hs[static_cast<std::size_t>(j)], f)
                    .value;
      }
      stat /= k;
      const double threshold = std::max(stat * (0.5 + rng.uniform()), 1e-6);

      const ClockScenario sc{rho, layout, hs, threshold, f, DecisionRule::conservative, 1.0, {}};
      if (!evaluate_decision(sc).sound) {
        ++unsound;
      }
    }
    rep.add("conservative_sound_random", count, static_cast<double>(unsound), 0.0);
  }

  {
    int unsound = 0;
    int n_inst = 0;
    const double factors[] = {0.6, 0.9, 1.0, 1.1, 1.4};
    const std::tuple<int, int, int> setups[] = {{2, 2, 1}, {4, 2, 1}, {8, 2, 1},
                                                {4, 3, 1}, {4, 2, 2}};
    for (const auto& [m, parties, per] : setups) {
      ClockScenario sc =
          aberg_block_scenario(m, parties, per, wy, 1.0, DecisionRule::conservative);
      double stat = 0.0;
      for (const Party& p : run_reporting(sc)) {
        stat += p.reported_value;
      }
      stat /= parties;
      for (double fac : factors) {
        sc.threshold = std::max(stat * fac, 1e-9);
        if (!evaluate_decision(sc).sound) {
          ++unsound;
        }
        ++n_inst;
      }
    }
    rep.add("conservative_sound_protocol", n_inst, static_cast<double>(unsound), 0.0);
  }

  {
    // The m=4 two-qubit family point: locals sum past the threshold that the
    // true global misses.
    ClockScenario sc = aberg_block_scenario(4, 2, 1, wy, 0.152, DecisionRule::naive);
    const DecisionOutcome naive = evaluate_decision(sc);
    rep.add("naive_witness_unsound", 1, (naive.decision && !naive.sound) ? 0.0 : 1.0, 0.0);

    sc.rule = DecisionRule::conservative;
    const DecisionOutcome cons = evaluate_decision(sc);
    rep.add("witness_scenario_conservative_sound", 1, cons.sound ? 0.0 : 1.0, 0.0);
  }

  {
    for (double c : {1.2, 2.0}) {
      const auto plan = find_scaled_witness(c, wy, 10);
      double violation = 1.0;
      if (plan) {
        const ClockScenario sc =
            aberg_block_scenario(plan->m, plan->parties, plan->qubits_per_party, wy,
                                 plan->threshold, DecisionRule::scaled, c);
        const DecisionOutcome out = evaluate_decision(sc);
        violation = (out.decision && !out.sound) ? 0.0 : 1.0;
      }
      rep.add(c == 2.0 ? "scaled_rule_witness_c2.0" : "scaled_rule_witness_c1.2", 1, violation,
              0.0);
    }
  }

  rep.finalize();
  return rep;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "axioms",  "monotonicity", "convexity", "additivity",
      "weak-superadditivity", "aberg", "clocks"};
  return names;
}

std::vector<SuiteReport> run_suites(const std::string& name, std::uint64_t seed, int count) {
  std::vector<SuiteReport> out;
  const auto run_one = [&](const std::string& n) {
    if (n == "axioms") {
      out.push_back(run_axioms(seed, count));
    } else if (n == "monotonicity") {
      out.push_back(run_monotonicity(seed, count));
    } else if (n == "convexity") {
      out.push_back(run_convexity(seed, count));
    } else if (n == "additivity") {
      out.push_back(run_additivity(seed, count));
    } else if (n == "weak-superadditivity") {
      out.push_back(run_weak_superadditivity(seed, count));
    } else if (n == "aberg") {
      out.push_back(run_aberg(seed, count));
    } else if (n == "clocks") {
      out.push_back(run_clocks(seed, count));
    } else {
      throw validation_error("unknown suite '" + n + "'");
    }
  };
  if (name == "all") {
    for (const std::string& n : suite_names()) {
      run_one(n);
    }
  } else {
    run_one(name);
  }
  return out;
}

json suite_report_to_json(const SuiteReport& rep) {
  json checks = json::array();
  for (const CheckResult& c : rep.checks) {
    checks.push_back(json{{"name", c.name},
                          {"instances", c.instances},
                          {"max_violation", c.max_violation},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
  }
  return json{{"suite", rep.suite},
              {"seed", rep.seed},
              {"count", rep.count},
              {"checks", std::move(checks)},
              {"pass", rep.pass}};
}

}  // namespace skew
