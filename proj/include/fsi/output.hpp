#pragma once
// Run-directory emission. CSV floats carry 17 significant digits; JSON uses
// the shortest representation that round-trips. Output depends only on the
// inputs, so repeated runs produce byte-identical files.
//
// Layout of a run directory:
//   config.txt        emitted configuration
//   ledger.csv        per-step energy ledger of the accepted solve
//   picard.csv        one row per fixed-point iteration (simulate only)
//   eta_snapshots/    eta_<step>.csv: shell coefficients at stored times
//   report.json       summary (status, energy constant, residual maxima, t_star)

#include <string>

#include "fsi/config.hpp"
#include "json.hpp"

namespace fsi {

std::string format_double(double x);
std::string ledger_csv(const Trajectory& tr);
std::string picard_csv(const std::vector<IterationLog>& log);
std::string eta_snapshot_csv(double t, const Eigen::VectorXd& coeffs);

nlohmann::json trajectory_summary(const Trajectory& tr);
nlohmann::json picard_report(const SimConfig& cfg, const PicardResult& r);
nlohmann::json decoupled_report(const SimConfig& cfg, const DecoupledResult& r);

// Throws IoError.
void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const nlohmann::json& j);
void write_picard_run(const std::string& dir, const SimConfig& cfg, const PicardResult& r);
void write_decoupled_run(const std::string& dir, const SimConfig& cfg, const DecoupledResult& r);

}  // namespace fsi
