// Command-line front end: simulate, decoupled, verify, study, basis-dump.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fsi/output.hpp"
#include "fsi/verification.hpp"

using namespace fsi;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Config file (optional) followed by `key=value` overrides.
SimConfig make_config(const std::string& path, const std::vector<std::string>& sets) {
  std::string text = path.empty() ? "" : read_file(path);
  if (!text.empty() && text.back() != '\n') text += '\n';
  for (const auto& s : sets) text += s + "\n";
  return parse_config(text);
}

void prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
}

int run_simulate(const SimConfig& c, const std::string& out) {
  const Discretization d(c.geometry, c.disc);
  const PicardResult r = picard_fixed_point(d, c.physics, c.problem(), c.solver);
  write_picard_run(out, c, r);
  std::cout << "status " << to_string(r.status) << ", " << r.iterations << " iterations, horizon "
            << format_double(r.horizon);
  if (r.status == PicardStatus::ContactStop) std::cout << ", t_star " << format_double(r.t_star);
  std::cout << "\n";
  return r.status == PicardStatus::NonConvergence ? 3 : 0;
}

int run_decoupled(const SimConfig& c, const std::string& out) {
  const Discretization d(c.geometry, c.disc);
  const ProblemData data = c.problem();
  const int steps = static_cast<int>(std::llround(c.T / c.dt));
  Eigen::VectorXd eta0 = Eigen::VectorXd::Zero(d.shell().size());
  for (int k = 0; k < std::min<int>(eta0.size(), static_cast<int>(c.eta0.size())); ++k) eta0(k) = c.eta0[k];
  std::vector<ReferenceVelocity> v(steps);
  for (auto& x : v) x.g = TrigPoly<double>(0, 0, c.geometry.L);
  const DecoupledResult r = decoupled_solve(d, c.physics, data, eta0.replicate(1, steps + 1), v, c.solver.eps);
  write_decoupled_run(out, c, r);
  std::cout << "steps " << r.traj.steps() << ", max relative balance residual "
            << format_double(r.traj.max_E > 0 ? r.traj.max_residual / r.traj.max_E : 0.0);
  if (r.traj.contact) std::cout << ", contact at t_star " << format_double(r.traj.t_star);
  std::cout << "\n";
  return 0;
}

int run_verify(const std::string& out, const std::vector<int>& ids, std::uint64_t seed) {
  VerifyOptions o;
  o.seed = seed;
  o.on_result = [](const SuiteResult& r) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << " " << r.name << "\n" << std::flush;
  };
  const auto results = run_suites(o, ids);
  prepare_dir(out);
  write_json((fs::path(out) / "report.json").string(), suites_report(results));
  for (const auto& r : results)
    if (!r.pass) return 4;
  return 0;
}

int run_study(SimConfig c, const std::string& levels, std::vector<double> values, const std::string& out,
              int stride) {
  if (levels != "eps" && levels != "n") throw ValidationError("--levels must be eps or n");
  if (values.empty()) values = levels == "eps" ? std::vector<double>{0.1, 0.05, 0.025} : std::vector<double>{8, 16, 32};
  if (values.size() < 3) throw ValidationError("a study needs at least three levels");
  prepare_dir(out);
  std::vector<std::unique_ptr<Discretization>> discs;
  std::vector<LevelRun> runs;
  json levels_json = json::array();
  for (double v : values) {
    SimConfig lc = c;
    std::string label;
    if (levels == "eps") {
      lc.solver.eps = v * c.geometry.R;
      label = "eps=" + format_double(v) + "R";
    } else {
      lc.disc.n = static_cast<int>(v);
      label = "n=" + std::to_string(lc.disc.n);
    }
    lc.validate();
    discs.push_back(std::make_unique<Discretization>(lc.geometry, lc.disc));
    PicardResult r = picard_fixed_point(*discs.back(), lc.physics, lc.problem(), lc.solver);
    std::cout << label << ": " << to_string(r.status) << " after " << r.iterations << " iterations\n" << std::flush;
    json lj = picard_report(lc, r);
    lj["label"] = label;
    levels_json.push_back(lj);
    runs.push_back({label, discs.back().get(), std::move(r)});
  }
  const CauchyTable t = convergence_diagnostics(runs, c.dt, stride);
  std::string csv = "pair,d_u,d_eta_t,d_hess\n";
  for (std::size_t k = 0; k < t.d_u.size(); ++k)
    csv += t.labels[k] + " vs " + t.labels[k + 1] + "," + format_double(t.d_u[k]) + "," +
           format_double(t.d_eta_t[k]) + "," + format_double(t.d_hess[k]) + "\n";
  write_text((fs::path(out) / "cauchy.csv").string(), csv);
  write_text((fs::path(out) / "config.txt").string(), emit_config(c));
  json rep = {{"command", "study"},  {"levels", levels},       {"runs", levels_json},
              {"d_u", t.d_u},        {"d_eta_t", t.d_eta_t},   {"d_hess", t.d_hess},
              {"decreasing", t.decreasing()}};
  write_json((fs::path(out) / "report.json").string(), rep);
  std::cout << csv << "decreasing: " << (t.decreasing() ? "yes" : "no") << "\n";
  return 0;
}

int run_basis_dump(const SimConfig& c, const std::string& out) {
  prepare_dir(out);
  const Discretization d(c.geometry, c.disc);
  json j;
  j["command"] = "basis-dump";
  json shell = json::array();
  for (int k = 0; k < d.shell().size(); ++k) {
    const auto& m = d.shell().mode(k);
    const Eigen::VectorXd& zp = d.shell().zpoly(m.zindex);
    shell.push_back({{"index", k},
                     {"theta_function", m.trig},
                     {"z_function", m.zindex},
                     {"z_polynomial", std::vector<double>(zp.data(), zp.data() + zp.size())}});
  }
  j["shell_modes"] = shell;
  j["shell_variable"] = "x = 2 z / L - 1";
  j["fluid_eigenvalues"] = d.fluid().eigenvalues();
  write_json((fs::path(out) / "basis.json").string(), j);
  // fluid modes on the reference quadrature nodes, physical cylindrical components
  const CylGrid& g = d.volume();
  const int nf = d.fluid().size();
  std::string csv = "mode,r,theta,z,u_r,u_theta,u_z\n";
  for (int k = 0; k < nf; ++k)
    for (int iz = 0; iz < g.nz(); ++iz)
      for (int it = 0; it < g.nt(); ++it)
        for (int ir = 0; ir < g.nr(); ++ir) {
          const Vec3& v = d.fluid_table()[g.node(ir, it, iz) * nf + k].v;
          csv += std::to_string(k) + "," + format_double(g.r[ir]) + "," + format_double(g.theta[it]) + "," +
                 format_double(g.z[iz]) + "," + format_double(v(0)) + "," + format_double(v(1)) + "," +
                 format_double(v(2)) + "\n";
        }
  write_text((fs::path(out) / "fluid_modes.csv").string(), csv);
  write_text((fs::path(out) / "config.txt").string(), emit_config(c));
  std::cout << d.shell().size() << " shell modes, " << nf << " fluid modes written to " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galerkin solver for a viscous fluid in an elastic cylinder with Navier slip"};
  app.require_subcommand(1);
  std::string config, out = "run";
  std::vector<std::string> sets;
  auto add_common = [&](CLI::App* s) {
    s->add_option("-c,--config", config, "configuration file (key = value)")->check(CLI::ExistingFile);
    s->add_option("-s,--set", sets, "override, e.g. --set physics.alpha=0.5");
    s->add_option("-o,--out", out, "run directory");
  };
  auto* sim = app.add_subcommand("simulate", "coupled run: Picard iteration over the decoupled problem");
  add_common(sim);
  auto* dec = app.add_subcommand("decoupled", "single solve around delta = eta0, v = 0");
  add_common(dec);
  auto* ver = app.add_subcommand("verify", "run the property suites and write report.json");
  std::vector<int> ids;
  std::uint64_t seed = 1;
  ver->add_option("-o,--out", out, "output directory");
  ver->add_option("--suite", ids, "suite ids to run (default: all)");
  ver->add_option("--seed", seed, "seed for randomized samples");
  auto* study = app.add_subcommand("study", "convergence tables across eps or n levels");
  add_common(study);
  std::string levels = "eps";
  std::vector<double> values;
  int stride = 5;
  study->add_option("--levels", levels, "eps or n")->check(CLI::IsMember({"eps", "n"}));
  study->add_option("--values", values, "level values (eps as multiples of R, or n)");
  study->add_option("--time-stride", stride, "steps between compared time slices")->check(CLI::PositiveNumber);
  auto* basis = app.add_subcommand("basis-dump", "write the shell and fluid bases");
  add_common(basis);
  auto* schema = app.add_subcommand("schema", "print the configuration keys and defaults");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*schema) {
      std::cout << config_schema();
      return 0;
    }
    if (*ver) return run_verify(out, ids, seed);
    const SimConfig c = make_config(config, sets);
    if (*sim) return run_simulate(c, out);
    if (*dec) return run_decoupled(c, out);
    if (*study) return run_study(c, levels, values, out, stride);
    if (*basis) return run_basis_dump(c, out);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
