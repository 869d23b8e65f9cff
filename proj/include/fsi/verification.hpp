#pragma once
// Property suites behind `fsi verify` and the acceptance binary. Each suite
// measures one family of identities or inequalities and reports the measured
// quantities next to their tolerances.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fsi/config.hpp"
#include "json.hpp"

namespace fsi {

struct SuiteResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  nlohmann::json measured = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();
  std::string note;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::function<void(const SuiteResult&)> on_result;  // called after each suite
};

struct Suite {
  int id;
  std::string name;
  std::function<SuiteResult(const VerifyOptions&)> run;
};

const std::vector<Suite>& suites();
// Runs the selected suites (all if ids is empty). A suite that throws is
// recorded as failed with the exception text in `note`.
std::vector<SuiteResult> run_suites(const VerifyOptions& opts, const std::vector<int>& ids = {});
nlohmann::json suites_report(const std::vector<SuiteResult>& results);

// Scenarios shared with the CLI.
SimConfig pulse_scenario();          // n = 8, small inflow pulse
SimConfig large_forcing_scenario();  // strong inward pulse, ends in contact

}  // namespace fsi
