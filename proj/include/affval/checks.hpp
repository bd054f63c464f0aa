#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "affval/common.hpp"

namespace affval {

struct RunConfig {
  std::uint64_t seed = 20240904;
  std::map<std::string, double> tolerances;  // overrides per check name
  int sphere_level = 64;
  double quad_tol = 1e-8;
  std::string out_dir;
  int threads = 1;

  double tolerance(const std::string& name, double fallback) const {
    auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
  }
  void validate() const;
};

struct CheckReport {
  std::string name;
  int instances = 0;
  double max_rel_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double seconds = 0.0;
};

// Names of the checks in suite order.
std::vector<std::string> check_names();

// Run one named check (deterministic given config.seed).
CheckReport run_check(const std::string& name, const RunConfig& config);

// Run every check, fanning instances across at most config.threads
// workers; reports come back in suite order regardless of scheduling.
std::vector<CheckReport> run_check_suite(const RunConfig& config);

}  // namespace affval
