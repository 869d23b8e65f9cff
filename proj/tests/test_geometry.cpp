#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fsi/geometry.hpp"
#include "fsi/shell_basis.hpp"

using namespace fsi;

namespace {
TrigPoly<double> random_eta(std::mt19937& rng, const ShellBasis& B, double amp) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd c(B.size());
  for (int k = 0; k < B.size(); ++k) c(k) = amp * u(rng) / (1.0 + k);
  return B.field(c);
}
}  // namespace

TEST_CASE("zero displacement gives the reference frame") {
  const double R = 1.3;
  ShellPoint<double> e;
  const SurfaceFrame f = surface_frame(R, e);
  CHECK(f.J == doctest::Approx(R));
  CHECK((f.nu - Vec3(1, 0, 0)).norm() < 1e-15);
}

TEST_CASE("surface jacobian equals closed form and |n|") {
  std::mt19937 rng(11);
  const ShellBasis B(2.0, 5, 4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto eta = random_eta(rng, B, 0.2);
    for (double th : {0.0, 0.9, 3.3})
      for (double z : {0.1, 1.0, 1.7}) {
        const auto p = eta.eval(th, z);
        const SurfaceFrame f = surface_frame(1.0, p);
        // independent oracle: Cartesian tangents of (R + eta)(cos, sin) e_xy + z e_z
        const double rr = 1.0 + p.v;
        const Vec3 t1(p.t * std::cos(th) - rr * std::sin(th), p.t * std::sin(th) + rr * std::cos(th), 0.0);
        const Vec3 t2(p.z * std::cos(th), p.z * std::sin(th), 1.0);
        const double J = t1.cross(t2).norm();
        CHECK(f.J == doctest::Approx(J).epsilon(1e-13));
        CHECK(jacobian_closed_form(1.0, p) == doctest::Approx(J).epsilon(1e-13));
        CHECK(f.nu.norm() == doctest::Approx(1.0).epsilon(1e-14));
      }
  }
}

TEST_CASE("contact violation when |eta| reaches R") {
  ShellPoint<double> e;
  e.v = -1.0;
  CHECK_THROWS_AS(surface_frame(1.0, e), ContactViolation);
}

TEST_CASE("cutoff validation") {
  Cylinder c;
  CHECK_NOTHROW(c.validate());
  c.M = 0.3;  // 0.3 * 3.75 > 1
  CHECK_THROWS_AS(c.validate(), InvalidCutoff);
  c = Cylinder{};
  c.a = 0.8;
  CHECK_THROWS_AS(c.validate(), InvalidCutoff);
  c = Cylinder{};
  const Profile p0 = c.rho(0.1), p1 = c.rho(0.9);
  CHECK(p0.v == 0.0);
  CHECK(p1.v == 1.0);
  // numerical slope bound matches the analytic maximum
  double mx = 0.0;
  for (int i = 0; i <= 10000; ++i) mx = std::max(mx, c.rho(i * 1e-4).d1);
  CHECK(mx == doctest::Approx(c.max_rho_slope()).epsilon(1e-6));
  const Profile s = c.slip_profile(c.R);
  CHECK(s.v == doctest::Approx(1.0));
  CHECK(s.d1 == doctest::Approx(2.0 / c.R));
}

TEST_CASE("domain map at zero displacement is the identity with det G = r") {
  const Cylinder cyl;
  const CylGrid g = volume_grid(cyl.R, cyl.L, 6, 8, 5);
  const auto m = domain_map(cyl, g, TrigPoly<double>(0, 0, cyl.L));
  for (int iz = 0; iz < g.nz(); ++iz)
    for (int it = 0; it < g.nt(); ++it)
      for (int ir = 0; ir < g.nr(); ++ir) {
        const int i = g.node(ir, it, iz);
        CHECK(m.detG[i] == doctest::Approx(g.r[ir]).epsilon(1e-15));
        CHECK(m.radius[i] == g.r[ir]);
      }
}

TEST_CASE("radial inversion round-trips the domain map") {
  std::mt19937 rng(5);
  const Cylinder cyl;
  const ShellBasis B(cyl.L, 4, 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto eta = random_eta(rng, B, 0.1);
  for (int i = 0; i < 50; ++i) {
    const double r = u(rng) * cyl.R, th = 6.28 * u(rng), z = cyl.L * u(rng);
    const double e = eta.eval(th, z).v;
    const double rx = r + cyl.rho(r).v * e;
    CHECK(std::abs(invert_radius(cyl, e, rx) - r) < 1e-10);
  }
}

TEST_CASE("degenerate map is rejected") {
  Cylinder cyl;
  const CylGrid g = volume_grid(cyl.R, cyl.L, 8, 4, 3);
  // constant eta = -0.6 makes 1 + rho' eta negative near the steepest point
  const auto eta = TrigPoly<double>::constant(-0.6, cyl.L);
  CHECK_THROWS_AS(domain_map(cyl, g, eta), DegenerateMap);
}
