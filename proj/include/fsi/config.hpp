#pragma once
// Run configuration: a flat `key = value` text file with dotted keys.
//
// Lines starting with '#' and blank lines are ignored. Missing keys take the
// defaults below (rho_f = rho_s = h = 1, mu_f = 1/2). Floats are emitted with
// 17 significant digits so that load(emit(c)) == c.

#include <cstdint>
#include <string>
#include <vector>

#include "fsi/coupling.hpp"

namespace fsi {

struct SimConfig {
  Cylinder geometry;
  Physics physics;
  DiscretizationOptions disc;
  double dt = 1e-3, T = 0.2;
  std::string inflow = "pulse(0, 0.1, 1)";  // PressureProfile spec on Gamma_in
  std::string outflow = "constant(0)";
  std::vector<double> eta0, eta1;  // initial shell coefficients
  PicardConfig solver;
  int snapshot_stride = 10;  // eta snapshot every k steps
  std::uint64_t seed = 1;

  bool operator==(const SimConfig&) const = default;

  // Throws ValidationError listing every violated invariant.
  void validate() const;
  ProblemData problem() const;
};

// Parse text; throws ParseError(line, key) on syntax errors or unknown keys,
// ValidationError on invariant violations.
SimConfig parse_config(const std::string& text);
SimConfig load_config(const std::string& path);
std::string emit_config(const SimConfig& c);
// One line per key: name, default, meaning.
std::string config_schema();

std::string to_string(ShellModel m);
std::string to_string(MetricConvention m);

}  // namespace fsi
