#pragma once

#include "skew/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace skew {

struct CheckResult {
  std::string name;
  int instances = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int count = 0;
  std::vector<CheckResult> checks;
  bool pass = false;

  CheckResult& add(const std::string& name, int instances, double max_violation,
                   double tolerance);
  const CheckResult& get(const std::string& name) const;
  void finalize();
};

// `count` scales the number of randomized instances; deterministic checks
// ignore it.
SuiteReport run_axioms(std::uint64_t seed, int count);
SuiteReport run_monotonicity(std::uint64_t seed, int count);
SuiteReport run_convexity(std::uint64_t seed, int count);
SuiteReport run_additivity(std::uint64_t seed, int count);
SuiteReport run_weak_superadditivity(std::uint64_t seed, int count);
SuiteReport run_aberg(std::uint64_t seed, int count);
SuiteReport run_clocks(std::uint64_t seed, int count);

const std::vector<std::string>& suite_names();
std::vector<SuiteReport> run_suites(const std::string& name, std::uint64_t seed, int count);
json suite_report_to_json(const SuiteReport& rep);

}  // namespace skew
