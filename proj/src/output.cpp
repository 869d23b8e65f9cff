#include "fsi/output.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>

namespace fsi {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

std::string ledger_csv(const Trajectory& tr) {
  std::string out = "t,E,D,E_slip,work,balance_residual,min_eig_M,sup_eta,min_radius,cond,picard_iter\n";
  for (const auto& r : tr.ledger)
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", format_double(r.t), format_double(r.E), format_double(r.D),
                       format_double(r.E_slip), format_double(r.work), format_double(r.residual),
                       format_double(r.min_eig_M), format_double(r.sup_eta), format_double(r.min_radius),
                       format_double(r.cond), r.picard_iter);
  return out;
}

std::string picard_csv(const std::vector<IterationLog>& log) {
  std::string out = "iter,d_delta,d_v,update,sup_E,min_radius,max_residual,width,steps,contact,t_star\n";
  for (const auto& l : log)
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", l.iter, format_double(l.d_delta), format_double(l.d_v),
                       format_double(l.update), format_double(l.sup_E), format_double(l.min_radius),
                       format_double(l.max_residual), format_double(l.width), l.steps, l.contact ? 1 : 0,
                       format_double(l.t_star));
  return out;
}

std::string eta_snapshot_csv(double t, const Eigen::VectorXd& coeffs) {
  std::string out = "# t = " + format_double(t) + "\nmode,coefficient\n";
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) out += fmt::format("{},{}\n", k, format_double(coeffs(k)));
  return out;
}

json trajectory_summary(const Trajectory& tr) {
  double min_radius = tr.ledger.empty() ? 0.0 : tr.ledger.front().min_radius, sup_eta = 0.0, min_eig = 0.0;
  if (!tr.ledger.empty()) min_eig = tr.ledger.front().min_eig_M;
  for (const auto& r : tr.ledger) {
    min_radius = std::min(min_radius, r.min_radius);
    sup_eta = std::max(sup_eta, r.sup_eta);
    min_eig = std::min(min_eig, r.min_eig_M);
  }
  json j;
  j["steps"] = tr.steps();
  j["horizon"] = tr.t.empty() ? 0.0 : tr.t.back();
  j["energy_constant"] = tr.energy_constant();
  j["E0"] = tr.E0;
  j["sup_E"] = tr.sup_E;
  j["dissipation_integral"] = tr.dissipation;
  j["pressure_norm2"] = tr.pressure_norm2;
  j["max_balance_residual"] = tr.max_residual;
  j["max_balance_residual_relative"] = tr.max_E > 0.0 ? tr.max_residual / tr.max_E : 0.0;
  j["min_radius"] = min_radius;
  j["sup_eta"] = sup_eta;
  j["min_eig_M"] = min_eig;
  j["contact"] = tr.contact;
  if (tr.contact) {
    j["t_star"] = tr.t_star;
    j["contact_reason"] = tr.contact_reason;
  }
  return j;
}

json picard_report(const SimConfig& cfg, const PicardResult& r) {
  json j;
  j["command"] = "simulate";
  j["status"] = to_string(r.status);
  j["iterations"] = r.iterations;
  j["tolerance"] = cfg.solver.tol;
  j["final_update"] = r.log.empty() ? 0.0 : r.log.back().update;
  j["self_consistency"] = r.self_consistency;
  j["horizon"] = r.horizon;
  j["mollifier_width"] = r.solution.motion.width;
  j["mollifier_deviation"] = r.solution.motion.deviation;
  j["trajectory"] = trajectory_summary(r.solution.traj);
  if (r.status == PicardStatus::ContactStop) j["t_star"] = r.t_star;
  return j;
}

json decoupled_report(const SimConfig& cfg, const DecoupledResult& r) {
  json j;
  j["command"] = "decoupled";
  j["eps"] = cfg.solver.eps;
  j["mollifier_width"] = r.motion.width;
  j["mollifier_deviation"] = r.motion.deviation;
  j["trajectory"] = trajectory_summary(r.traj);
  if (r.traj.contact) j["t_star"] = r.traj.t_star;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("write failed for " + path);
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

namespace {

void prepare(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(fs::path(dir) / "eta_snapshots", ec);
  if (ec) throw IoError("cannot create run directory " + dir + ": " + ec.message());
}

void write_common(const std::string& dir, const SimConfig& cfg, const Trajectory& tr) {
  const fs::path p(dir);
  write_text((p / "config.txt").string(), emit_config(cfg));
  write_text((p / "ledger.csv").string(), ledger_csv(tr));
  for (int j = 0; j <= tr.steps(); ++j)
    if (j % cfg.snapshot_stride == 0 || j == tr.steps())
      write_text((p / "eta_snapshots" / fmt::format("eta_{:06d}.csv", j)).string(),
                 eta_snapshot_csv(tr.t[j], tr.eta.col(j)));
}

}  // namespace

void write_picard_run(const std::string& dir, const SimConfig& cfg, const PicardResult& r) {
  prepare(dir);
  write_common(dir, cfg, r.solution.traj);
  write_text((fs::path(dir) / "picard.csv").string(), picard_csv(r.log));
  write_json((fs::path(dir) / "report.json").string(), picard_report(cfg, r));
}

void write_decoupled_run(const std::string& dir, const SimConfig& cfg, const DecoupledResult& r) {
  prepare(dir);
  write_common(dir, cfg, r.traj);
  write_text((fs::path(dir) / "picard.csv").string(), picard_csv({}));
  write_json((fs::path(dir) / "report.json").string(), decoupled_report(cfg, r));
}

}  // namespace fsi
