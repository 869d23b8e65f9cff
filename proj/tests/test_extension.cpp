#include <cmath>
#include <random>

#include "doctest.h"
#include "fsi/extension.hpp"
#include "fsi/shell_basis.hpp"

using namespace fsi;

namespace {
TrigPoly<double> random_field(std::mt19937& rng, const ShellBasis& B, double amp) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd c(B.size());
  for (int k = 0; k < B.size(); ++k) c(k) = amp * u(rng) / (1.0 + k);
  return B.field(c);
}

double max_divergence(const std::vector<EulerianSample>& s) {
  double m = 0.0;
  for (const auto& x : s) m = std::max(m, std::abs(x.grad.trace()));
  return m;
}

double max_gradient(const std::vector<EulerianSample>& s) {
  double m = 0.0;
  for (const auto& x : s) m = std::max(m, x.grad.norm());
  return m;
}
}  // namespace

TEST_CASE("no-slip extension has trace xi e_r on the deformed wall") {
  std::mt19937 rng(11);
  const Cylinder cyl;
  const ShellBasis SB(cyl.L, 5, 4);
  const CylGrid grid = volume_grid(cyl.R, cyl.L, 6, 12, 10);
  for (int t = 0; t < 5; ++t) {
    const auto delta = random_field(rng, SB, 0.15);
    const auto xi = random_field(rng, SB, 1.0);
    const auto tr = extend_noslip_trace(cyl, grid, delta, xi);
    for (int iz = 0; iz < grid.nz(); ++iz)
      for (int it = 0; it < grid.nt(); ++it) {
        const double x = xi.eval(grid.theta[it], grid.z[iz]).v;
        const Vec3 v = tr[grid.column(it, iz)];
        CHECK(std::abs(v(0) - x) < 1e-13);
        CHECK(std::abs(v(1)) < 1e-14);
        CHECK(std::abs(v(2)) < 1e-14);
      }
  }
}

TEST_CASE("slip extension carries the normal flux (R + eta) xi") {
  std::mt19937 rng(12);
  const Cylinder cyl;
  const ShellBasis SB(cyl.L, 5, 4);
  const CylGrid grid = volume_grid(cyl.R, cyl.L, 6, 12, 10);
  for (int t = 0; t < 5; ++t) {
    const auto eta = random_field(rng, SB, 0.15);
    const auto xi = random_field(rng, SB, 1.0);
    const auto tr = extend_slip_trace(cyl, grid, eta, xi);
    for (int iz = 0; iz < grid.nz(); ++iz)
      for (int it = 0; it < grid.nt(); ++it) {
        const auto e = eta.eval(grid.theta[it], grid.z[iz]);
        const double x = xi.eval(grid.theta[it], grid.z[iz]).v;
        const SurfaceFrame f = surface_frame(cyl.R, e);
        // w . nu J against xi e_r . nu J
        const double lhs = tr[grid.column(it, iz)].dot(f.n);
        CHECK(std::abs(lhs - (cyl.R + e.v) * x) < 1e-12);
        CHECK(std::abs(lhs - x * f.n(0)) < 1e-12);
      }
  }
}

TEST_CASE("extensions are divergence-free in the deformed domain") {
  std::mt19937 rng(13);
  const Cylinder cyl;
  const ShellBasis SB(cyl.L, 5, 4);
  const CylGrid grid = volume_grid(cyl.R, cyl.L, 8, 12, 10);
  for (int t = 0; t < 4; ++t) {
    const auto eta = random_field(rng, SB, 0.15);
    const auto xi = random_field(rng, SB, 1.0);
    const auto ns = extend_noslip(cyl, grid, eta, xi);
    const auto sl = extend_slip(cyl, grid, eta, xi);
    CHECK(max_divergence(ns) <= 1e-12 * (1.0 + max_gradient(ns)));
    CHECK(max_divergence(sl) <= 1e-12 * (1.0 + max_gradient(sl)));
  }
}

TEST_CASE("no-slip lift gradient matches finite differences in the radius") {
  std::mt19937 rng(14);
  const Cylinder cyl;
  const ShellBasis SB(cyl.L, 4, 3);
  const auto delta = random_field(rng, SB, 0.1);
  const auto xi = random_field(rng, SB, 1.0);
  const FluxPolys<double> fp(lateral_flux(cyl.R, delta, xi));
  const double th = 0.8, z = 0.7, h = 1e-6;
  const auto col = flux_column_at(fp, th, z);
  for (double r : {0.45, 0.6, 0.72}) {
    const auto q = flux_lift_jet(cyl.alpha1(r), r, col);
    const auto qp = flux_lift_jet(cyl.alpha1(r + h), r + h, col);
    const auto qm = flux_lift_jet(cyl.alpha1(r - h), r - h, col);
    CHECK(((qp.v - qm.v) / (2 * h) - q.d.col(0)).norm() < 1e-7);
    const auto ct = flux_column_at(fp, th + h, z), cm = flux_column_at(fp, th - h, z);
    const Vec3 dt = (flux_lift_jet(cyl.alpha1(r), r, ct).v - flux_lift_jet(cyl.alpha1(r), r, cm).v) / (2 * h);
    CHECK((dt - q.d.col(1)).norm() < 1e-7);
    const auto cz = flux_column_at(fp, th, z + h), czm = flux_column_at(fp, th, z - h);
    const Vec3 dz = (flux_lift_jet(cyl.alpha1(r), r, cz).v - flux_lift_jet(cyl.alpha1(r), r, czm).v) / (2 * h);
    CHECK((dz - q.d.col(2)).norm() < 1e-7);
  }
}

TEST_CASE("tangential components vanish on the disks") {
  std::mt19937 rng(15);
  const Cylinder cyl;
  const ShellBasis SB(cyl.L, 5, 4);
  const auto delta = random_field(rng, SB, 0.15);
  const auto xi = random_field(rng, SB, 1.0);
  const FluxPolys<double> fp(lateral_flux(cyl.R, delta, xi));
  for (double z : {0.0, cyl.L})
    for (double th : {0.0, 1.3, 4.0})
      for (double r : {0.2, 0.5, 0.8, 0.99}) {
        const auto col = flux_column_at(fp, th, z);
        const auto q = flux_lift_jet(cyl.alpha1(r), r, col);
        CHECK(std::abs(q.v(0)) < 1e-13);
        CHECK(std::abs(q.v(1)) < 1e-13);
        const auto qs = flux_lift_jet(cyl.slip_profile(r), r, col);
        CHECK(std::abs(qs.v(0)) < 1e-13);
        CHECK(std::abs(qs.v(1)) < 1e-13);
      }
  // at z = 0 the axial flux vanishes too, at z = L it equals the net lateral flux
  const auto c0 = flux_column_at(fp, 0.3, 0.0);
  CHECK(std::abs(c0.Gbar) < 1e-14);
}

TEST_CASE("extension estimate ratios are finite and vanish for zero data") {
  std::mt19937 rng(16);
  const Cylinder cyl;
  const ShellBasis SB(cyl.L, 5, 4);
  const CylGrid grid = volume_grid(cyl.R, cyl.L, 8, 12, 10);
  const auto eta = random_field(rng, SB, 0.15);
  std::vector<TrigPoly<double>> xis;
  for (int t = 0; t < 4; ++t) xis.push_back(random_field(rng, SB, 1.0));
  const EstimateExponents ex;
  const auto s = slip_extension_estimate(cyl, grid, eta, xis, ex);
  const auto n = noslip_extension_estimate(cyl, grid, eta, xis, ex);
  CHECK(std::isfinite(s.value_ratio));
  CHECK(std::isfinite(s.gradient_ratio));
  CHECK(std::isfinite(n.value_ratio));
  CHECK(std::isfinite(n.gradient_ratio));
  CHECK(s.value_ratio > 0.0);
  const auto z = slip_extension_estimate(cyl, grid, eta, {TrigPoly<double>(2, 5, cyl.L)}, ex);
  CHECK(z.value_ratio == 0.0);
  CHECK(z.gradient_ratio == 0.0);
}
