// Acceptance gate: one line per criterion, exit 0 only if all ten hold.
#include "skew/aberg.hpp"
#include "skew/clocknet.hpp"
#include "skew/io.hpp"
#include "skew/suites.hpp"

#include <cmath>
#include <cstdio>
#include <string>

using namespace skew;

namespace {

int g_failures = 0;

void line(int idx, bool ok, const std::string& what) {
  std::printf("[%2d] %s  %s\n", idx, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!ok) {
    ++g_failures;
  }
}

bool passes(const SuiteReport& rep, const char* check) {
  const CheckResult& c = rep.get(check);
  if (!c.pass) {
    std::printf("     failing check %s: violation %.3e > tolerance %.3e (%d instances)\n",
                c.name.c_str(), c.max_violation, c.tolerance, c.instances);
  }
  return c.pass;
}

}  // namespace

int main() {
  const std::uint64_t seed = 7;
  const std::string data_dir = SKEWTOOL_DATA_DIR;
  const MonotoneFunction wy = builtin_monotone("WY");

  const SuiteReport ax = run_axioms(seed, 200);
  const SuiteReport mono = run_monotonicity(seed, 200);
  const SuiteReport conv = run_convexity(seed, 200);
  const SuiteReport add = run_additivity(seed, 200);
  const SuiteReport weak = run_weak_superadditivity(seed, 600);  // >= 200 per k
  const SuiteReport ab = run_aberg(seed, 200);
  const SuiteReport clk = run_clocks(seed, 500);

  // 1: spectral evaluation vs the two trace-formula oracles
  line(1, passes(ax, "oracle_wy") && passes(ax, "oracle_wyd"),
       "oracle equivalence, 200 pairs per d in {2,3,4,6,8}, rel. 1e-9");

  // 2: exact quarter for the plus state
  {
    ComplexVector v(2);
    v << 1.0, 1.0;
    ComplexMatrix h = ComplexMatrix::Zero(2, 2);
    h(1, 1) = 1.0;
    const double val =
        skew_info(DensityMatrix::from_pure(v), Observable(h), wy).value;
    line(2, std::abs(val - 0.25) <= 1e-12,
         "I^WY(|+><+|, diag(0,1)) = " + format_sig(val) + ", within 1e-12 of 1/4");
  }

  // 3: pure states reduce to the variance for every registered f
  line(3, passes(ax, "pure_state_variance"),
       "pure-state variance identity, 200 states, every registered f");

  // 4: the six structural properties at 1e-9
  line(4,
       passes(ax, "commuting_vanishes") && passes(add, "product_additivity") &&
           passes(conv, "register_identity") && passes(conv, "convexity") &&
           passes(mono, "partial_trace_monotone") &&
           passes(mono, "commuting_unitary_invariance"),
       "vanishing/additivity/register/convexity/partial-trace/unitary-invariance, "
       "200+ instances each");

  // 5: monotonicity under generated covariant dynamics, d in {2,3,4,6}
  line(5,
       passes(mono, "covariance_gate") && passes(mono, "covariant_channel_monotone") &&
           passes(mono, "instrument_deterministic_monotone") &&
           passes(mono, "instrument_selective_monotone") &&
           passes(mono, "noncovariant_fixture_rejected"),
       "deterministic + selective monotonicity under covariant channels/instruments");

  // 6: weak superadditivity at 1e-10, k in {2,3,4}
  line(6, passes(weak, "weak_bound_random") && passes(weak, "weak_bound_protocol"),
       "global >= (1/k) * sum of locals, 200+ states per k");

  // 7: ladder-protocol machinery
  line(7,
       passes(ab, "energy_commutator") && passes(ab, "catalytic_moments") &&
           passes(ab, "protocol_norm_guard") && passes(ab, "reduced_channel_match") &&
           passes(ab, "two_qubit_closed_form"),
       "commutator <= 1e-10, moments 1e-12/step, reduced channel 1e-10, "
       "closed form 1e-12 for M in [1,50]");

  // 8: sweep shape, with the argmax computed and reported
  {
    const auto rows = fig1_sweep(1, 50, wy);
    bool negative = true;
    int argmax = 0;
    double peak = 0.0;
    for (const SweepRow& r : rows) {
      if (r.m >= 2) {
        negative = negative && r.gap < 0.0;
        if (std::abs(r.gap) > peak) {
          peak = std::abs(r.gap);
          argmax = r.m;
        }
      }
    }
    const double g1 = rows.front().gap;
    const double g2 = std::abs(rows[1].gap);
    const double g20 = std::abs(rows[19].gap);
    const double g200 = std::abs(fig1_sweep(200, 200, wy).front().gap);
    const bool shape = negative && std::abs(g1) <= 1e-10 && peak > g2 && peak > g20 &&
                       g200 < peak / 10.0 && argmax == 4;
    line(8, shape,
         "gap < 0 on [2,50], gap(1) = 0, peak dominates, decays; computed argmax M = " +
             std::to_string(argmax) + " (expected 4)");
  }

  // 9: the m=8 construction and its resource bound
  {
    const MultipartiteResult res = multipartite_violation(8, wy, 64);
    const bool construction = std::abs(res.ancilla_value - 5.25) <= 1e-10 &&
                              res.violation_found &&
                              res.n_star * res.local_value > 5.25;
    line(9,
         construction && passes(ab, "local_sum_slope_constant") &&
             passes(ab, "global_bounded_by_resource"),
         "I_ancilla = " + format_sig(res.ancilla_value) + ", N* = " +
             std::to_string(res.n_star) +
             ", linear local growth, global bounded through N = 32");
  }

  // 10: decision rules, including the bundled scenario file
  {
    const ClockScenario bundled =
        scenario_from_json(load_json_file(data_dir + "/aberg_m4_scenario.json"));
    const DecisionOutcome naive = evaluate_decision(bundled);
    ClockScenario cons = bundled;
    cons.rule = DecisionRule::conservative;
    const bool bundled_ok =
        naive.decision && !naive.sound && evaluate_decision(cons).sound;
    line(10,
         bundled_ok && passes(clk, "conservative_sound_random") &&
             passes(clk, "conservative_sound_protocol") &&
             passes(clk, "naive_witness_unsound") &&
             passes(clk, "witness_scenario_conservative_sound") &&
             passes(clk, "scaled_rule_witness_c1.2") &&
             passes(clk, "scaled_rule_witness_c2.0"),
         "conservative sound on 500 random + protocol scenarios; naive and "
         "scaled (c = 1.2, 2) witnesses exhibited");
  }

  if (g_failures == 0) {
    std::printf("acceptance: all 10 criteria hold\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
