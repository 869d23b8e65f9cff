#include "fsi/config.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

namespace fsi {

namespace {

std::string fmt_double(double x) { return fmt::format("{:.17g}", x); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, int line, const std::string& key) {
  double x = 0.0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, x);
  if (r.ec != std::errc() || r.ptr != end) throw ParseError(line, key, "expected a number, got '" + v + "'");
  return x;
}

long long to_int(const std::string& v, int line, const std::string& key) {
  long long x = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, x);
  if (r.ec != std::errc() || r.ptr != end) throw ParseError(line, key, "expected an integer, got '" + v + "'");
  return x;
}

std::vector<double> to_list(const std::string& v, int line, const std::string& key) {
  std::vector<double> out;
  std::istringstream in(v);
  std::string tok;
  while (in >> tok) out.push_back(to_double(tok, line, key));
  return out;
}

std::string emit_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt_double(v[i]);
  return s;
}

struct Key {
  std::string name, help;
  std::function<std::string(const SimConfig&)> get;
  std::function<void(SimConfig&, const std::string&, int)> set;
};

template <class F>
Key real_key(std::string name, F field, std::string help) {
  return {name, help, [field](const SimConfig& c) { return fmt_double(field(const_cast<SimConfig&>(c))); },
          [field, name](SimConfig& c, const std::string& v, int line) { field(c) = to_double(v, line, name); }};
}

template <class F>
Key int_key(std::string name, F field, std::string help) {
  return {name, help, [field](const SimConfig& c) { return std::to_string(field(const_cast<SimConfig&>(c))); },
          [field, name](SimConfig& c, const std::string& v, int line) {
            field(c) = static_cast<std::remove_reference_t<decltype(field(c))>>(to_int(v, line, name));
          }};
}

#define REAL(name, expr, help) real_key(name, [](SimConfig& c) -> double& { return expr; }, help)
#define INT(name, expr, help) int_key(name, [](SimConfig& c) -> int& { return expr; }, help)

const std::vector<Key>& keys() {
  static const std::vector<Key> k = {
      REAL("geometry.R", c.geometry.R, "reference radius"),
      REAL("geometry.L", c.geometry.L, "cylinder length"),
      REAL("geometry.a", c.geometry.a, "rho vanishes on [0, a]"),
      REAL("geometry.b", c.geometry.b, "rho equals 1 on [R - b, R]"),
      REAL("geometry.M", c.geometry.M, "admissible bound on |eta|"),
      REAL("geometry.margin", c.geometry.margin, "minimum admissible R + eta"),
      REAL("physics.rho_f", c.physics.rho_f, "fluid density"),
      REAL("physics.mu_f", c.physics.mu_f, "fluid viscosity"),
      REAL("physics.rho_s", c.physics.rho_s, "shell density"),
      REAL("physics.h", c.physics.h, "shell thickness"),
      REAL("physics.alpha", c.physics.alpha, "slip length"),
      REAL("physics.lambda_s", c.physics.lambda_s, "shell Lame lambda"),
      REAL("physics.mu_s", c.physics.mu_s, "shell Lame mu"),
      {"model.shell", "linear | koiter",
       [](const SimConfig& c) { return to_string(c.physics.model); },
       [](SimConfig& c, const std::string& v, int line) {
         if (v == "linear") c.physics.model = ShellModel::Linear;
         else if (v == "koiter") c.physics.model = ShellModel::Koiter;
         else throw ParseError(line, "model.shell", "expected linear or koiter");
       }},
      {"model.metric_convention", "as-printed | vanishing-at-zero",
       [](const SimConfig& c) { return to_string(c.physics.metric); },
       [](SimConfig& c, const std::string& v, int line) {
         if (v == "as-printed") c.physics.metric = MetricConvention::AsPrinted;
         else if (v == "vanishing-at-zero") c.physics.metric = MetricConvention::VanishingAtZero;
         else throw ParseError(line, "model.metric_convention", "expected as-printed or vanishing-at-zero");
       }},
      REAL("model.inflow_normal_sign", c.physics.inflow_normal_sign, "+1 or -1: nu = -sign e_z on the inflow disk"),
      INT("disc.n", c.disc.n, "coupled basis size (even)"),
      INT("disc.shell_theta", c.disc.shell_theta, "shell theta functions"),
      INT("disc.shell_z", c.disc.shell_z, "shell z functions"),
      INT("disc.nr", c.disc.nr, "radial quadrature nodes"),
      INT("disc.nt", c.disc.nt, "angular quadrature nodes"),
      INT("disc.nz", c.disc.nz, "axial quadrature nodes"),
      INT("disc.disk_nr", c.disc.disk_nr, "radial nodes on the disks"),
      INT("fluid.modes", c.disc.fluid.modes, "fluid Ritz modes"),
      INT("fluid.theta_max", c.disc.fluid.theta_max, "largest Fourier wavenumber of the fluid family"),
      INT("fluid.kz_max", c.disc.fluid.kz_max, "largest axial wavenumber of the fluid family"),
      INT("fluid.radial", c.disc.fluid.radial, "radial functions per family member"),
      INT("fluid.quad_r", c.disc.fluid.quad_r, "Ritz quadrature radial nodes"),
      INT("fluid.quad_theta", c.disc.fluid.quad_theta, "Ritz quadrature angular nodes"),
      INT("fluid.quad_z", c.disc.fluid.quad_z, "Ritz quadrature axial nodes"),
      REAL("time.dt", c.dt, "time step"),
      REAL("time.T", c.T, "final time"),
      {"forcing.inflow", "pressure on the inflow disk: constant(v) | pulse(t0, width, amp) | csv:path",
       [](const SimConfig& c) { return c.inflow; },
       [](SimConfig& c, const std::string& v, int) { c.inflow = v; }},
      {"forcing.outflow", "pressure on the outflow disk",
       [](const SimConfig& c) { return c.outflow; },
       [](SimConfig& c, const std::string& v, int) { c.outflow = v; }},
      {"initial.eta0", "space-separated shell coefficients of eta(0)",
       [](const SimConfig& c) { return emit_list(c.eta0); },
       [](SimConfig& c, const std::string& v, int line) { c.eta0 = to_list(v, line, "initial.eta0"); }},
      {"initial.eta1", "space-separated shell coefficients of d_t eta(0)",
       [](const SimConfig& c) { return emit_list(c.eta1); },
       [](SimConfig& c, const std::string& v, int line) { c.eta1 = to_list(v, line, "initial.eta1"); }},
      REAL("solver.eps", c.solver.eps, "mollifier parameter"),
      REAL("solver.tol", c.solver.tol, "Picard update tolerance"),
      INT("solver.max_iters", c.solver.max_iters, "Picard iteration cap"),
      REAL("solver.relax", c.solver.relax, "Picard relaxation in (0, 1]"),
      INT("output.snapshot_stride", c.snapshot_stride, "steps between eta snapshots"),
      {"seed", "seed for randomized checks",
       [](const SimConfig& c) { return std::to_string(c.seed); },
       [](SimConfig& c, const std::string& v, int line) {
         std::uint64_t x = 0;
         const auto* end = v.data() + v.size();
         const auto r = std::from_chars(v.data(), end, x);
         if (r.ec != std::errc() || r.ptr != end) throw ParseError(line, "seed", "expected an unsigned integer");
         c.seed = x;
       }},
  };
  return k;
}

#undef REAL
#undef INT

}  // namespace

std::string to_string(ShellModel m) { return m == ShellModel::Linear ? "linear" : "koiter"; }
std::string to_string(MetricConvention m) {
  return m == MetricConvention::AsPrinted ? "as-printed" : "vanishing-at-zero";
}

void SimConfig::validate() const {
  std::vector<std::string> bad;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) bad.push_back(what);
  };
  const Physics& p = physics;
  need(p.rho_f > 0, "physics.rho_f > 0");
  need(p.mu_f > 0, "physics.mu_f > 0");
  need(p.rho_s > 0, "physics.rho_s > 0");
  need(p.h > 0, "physics.h > 0");
  need(p.alpha > 0, "physics.alpha > 0");
  need(p.lambda_s >= 0 && p.mu_s > 0, "physics.mu_s > 0 and physics.lambda_s >= 0");
  need(p.inflow_normal_sign == 1.0 || p.inflow_normal_sign == -1.0, "model.inflow_normal_sign in {-1, 1}");
  need(dt > 0, "time.dt > 0");
  need(T > 0, "time.T > 0");
  need(disc.n >= 2 && disc.n % 2 == 0, "disc.n even and >= 2");
  need(disc.shell_theta >= 1 && disc.shell_z >= 1, "disc.shell_theta, disc.shell_z >= 1");
  need(disc.shell_theta * disc.shell_z >= disc.n / 2, "disc.shell_theta * disc.shell_z >= disc.n / 2");
  need(disc.nr >= 2 && disc.nt >= 2 && disc.nz >= 2 && disc.disk_nr >= 2, "quadrature sizes >= 2");
  need(snapshot_stride >= 1, "output.snapshot_stride >= 1");
  try {
    geometry.validate();
  } catch (const Error& e) {
    bad.push_back(std::string("geometry: ") + e.what());
  }
  try {
    solver.validate();
  } catch (const Error& e) {
    bad.push_back(std::string("solver: ") + e.what());
  }
  for (const auto* s : {&inflow, &outflow}) {
    try {
      PressureProfile::parse(*s);
    } catch (const Error& e) {
      bad.push_back("forcing '" + *s + "': " + e.what());
    }
  }
  if (bad.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& b : bad) msg += "\n  " + b;
  throw ValidationError(msg);
}

ProblemData SimConfig::problem() const {
  ProblemData d;
  d.P_in = PressureProfile::parse(inflow);
  d.P_out = PressureProfile::parse(outflow);
  d.init.eta0 = Eigen::Map<const Eigen::VectorXd>(eta0.data(), static_cast<Eigen::Index>(eta0.size()));
  d.init.eta1 = Eigen::Map<const Eigen::VectorXd>(eta1.data(), static_cast<Eigen::Index>(eta1.size()));
  d.dt = dt;
  d.T = T;
  return d;
}

SimConfig parse_config(const std::string& text) {
  SimConfig c;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(line, s, "expected key = value");
    const std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
    bool found = false;
    for (const auto& k : keys())
      if (k.name == key) {
        k.set(c, value, line);
        found = true;
        break;
      }
    if (!found) throw ParseError(line, key, "unknown key");
  }
  c.validate();
  return c;
}

SimConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const SimConfig& c) {
  std::string out;
  for (const auto& k : keys()) out += k.name + " = " + k.get(c) + "\n";
  return out;
}

std::string config_schema() {
  const SimConfig d;
  std::string out;
  for (const auto& k : keys()) out += fmt::format("{:<26} default: {:<20} {}\n", k.name, k.get(d), k.help);
  return out;
}

}  // namespace fsi
