#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "fsi/output.hpp"

using namespace fsi;

namespace {
std::string read(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

DiscretizationOptions tiny() {
  DiscretizationOptions o;
  o.n = 4;
  o.nr = 6;
  o.nt = 8;
  o.nz = 8;
  o.disk_nr = 8;
  o.fluid.modes = 4;
  o.fluid.quad_r = 12;
  o.fluid.quad_theta = 8;
  o.fluid.quad_z = 16;
  return o;
}
}  // namespace

TEST_CASE("empty config gives the normalized defaults") {
  const SimConfig c = parse_config("");
  CHECK(c == SimConfig{});
  CHECK(c.physics.rho_f == 1.0);
  CHECK(c.physics.rho_s == 1.0);
  CHECK(c.physics.h == 1.0);
  CHECK(c.physics.mu_f == 0.5);
}

TEST_CASE("config round-trips through emit and load") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int k = 0; k < 20; ++k) {
    SimConfig c;
    c.physics.alpha = u(rng);
    c.physics.mu_f = u(rng) / 3.0;
    c.physics.model = k % 2 ? ShellModel::Koiter : ShellModel::Linear;
    c.physics.metric = k % 3 ? MetricConvention::AsPrinted : MetricConvention::VanishingAtZero;
    c.physics.inflow_normal_sign = k % 2 ? 1.0 : -1.0;
    c.geometry.L = 1.0 + u(rng);
    c.dt = u(rng) * 1e-3;
    c.T = u(rng);
    c.eta0 = {u(rng) * 1e-3, -u(rng) * 1e-4, 1.0 / 3.0};
    c.inflow = "pulse(0, 0.1, " + std::to_string(k) + ")";
    c.solver.eps = u(rng) / 10.0;
    c.seed = 1234567890123ull + k;
    const SimConfig d = parse_config(emit_config(c));
    CHECK(d == c);
    CHECK(emit_config(d) == emit_config(c));
  }
}

TEST_CASE("config errors carry line and key") {
  CHECK_THROWS_AS(parse_config("physics.alpha = 0"), ValidationError);
  CHECK_THROWS_AS(parse_config("time.dt = -1"), ValidationError);
  CHECK_THROWS_AS(parse_config("disc.n = 5"), ValidationError);
  try {
    parse_config("# header\nphysics.mu_f = 0.5\nphysics.bogus = 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.key == "physics.bogus");
  }
  try {
    parse_config("time.T = abc");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.key == "time.T");
  }
  CHECK_THROWS_AS(load_config("/nonexistent/config.txt"), IoError);
}

TEST_CASE("run outputs are deterministic and report contact") {
  namespace fs = std::filesystem;
  SimConfig c;
  c.disc = tiny();
  c.dt = 5e-3;
  c.T = 0.03;
  c.inflow = "pulse(0, 0.05, 0.5)";
  const Discretization d(c.geometry, c.disc);
  const fs::path base = fs::temp_directory_path() / "fsi_test_outputs";
  fs::remove_all(base);
  for (const char* run : {"a", "b"}) {
    const PicardResult r = picard_fixed_point(d, c.physics, c.problem(), c.solver);
    write_picard_run((base / run).string(), c, r);
  }
  for (const char* f : {"ledger.csv", "picard.csv", "report.json", "config.txt"})
    CHECK(read(base / "a" / f) == read(base / "b" / f));
  CHECK(parse_config(read(base / "a" / "config.txt")) == c);
  CHECK(fs::exists(base / "a" / "eta_snapshots" / "eta_000000.csv"));
  const auto rep = nlohmann::json::parse(read(base / "a" / "report.json"));
  CHECK(rep["status"] == "converged");
  CHECK(!rep.contains("t_star"));
  // contact run
  SimConfig k = c;
  k.T = 0.4;
  k.inflow = "pulse(0, 0.4, -15000)";
  k.solver.eps = 0.1;
  const PicardResult r = picard_fixed_point(d, k.physics, k.problem(), k.solver);
  write_picard_run((base / "contact").string(), k, r);
  const auto rc = nlohmann::json::parse(read(base / "contact" / "report.json"));
  CHECK(rc["status"] == "contact_stop");
  CHECK(rc.contains("t_star"));
  CHECK(rc["t_star"].get<double>() > 0.0);
  fs::remove_all(base);
}

TEST_CASE("csv floats carry 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
