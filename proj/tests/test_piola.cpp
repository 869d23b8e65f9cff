#include <cmath>
#include <random>

#include "doctest.h"
#include "fsi/fluid_basis.hpp"
#include "fsi/piola.hpp"
#include "fsi/shell_basis.hpp"

using namespace fsi;

namespace {
TrigPoly<double> random_eta(std::mt19937& rng, const ShellBasis& B, double amp) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd c(B.size());
  for (int k = 0; k < B.size(); ++k) c(k) = amp * u(rng) / (1.0 + k);
  return B.field(c);
}

VectorJet<double> random_jet(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  VectorJet<double> j;
  for (int i = 0; i < 3; ++i) {
    j.v(i) = u(rng);
    for (int k = 0; k < 3; ++k) j.d(i, k) = u(rng);
  }
  return j;
}

// Cartesian value of the Piola image of basis mode k at a Cartesian point of Omega_eta
Vec3 image_at(const Cylinder& cyl, const FluidBasis& B, const TrigPoly<double>& eta, int k, const Vec3& x) {
  const double rx = std::hypot(x(0), x(1)), th = std::atan2(x(1), x(0));
  const auto e = eta.eval(th, x(2));
  const double r = invert_radius(cyl, e.v, rx);
  const MapJet<double> m = map_jet(r, radial_jet(cyl.rho(r), e));
  const Vec3 w = piola_forward(m, B.eval(r, th, x(2))[k]).v;
  return frame_rotation(th) * w;
}
}  // namespace

TEST_CASE("zero displacement transform is the identity and round-trips") {
  std::mt19937 rng(2);
  const Cylinder cyl;
  const ShellBasis SB(cyl.L, 4, 4);
  for (int t = 0; t < 20; ++t) {
    const VectorJet<double> phi = random_jet(rng);
    ShellPoint<double> zero;
    const MapJet<double> m0 = map_jet(0.7, radial_jet(cyl.rho(0.7), zero));
    const auto w0 = piola_forward(m0, phi);
    CHECK((w0.v - phi.v).norm() < 1e-15);
    CHECK((w0.d - phi.d).norm() < 1e-15);
    const auto eta = random_eta(rng, SB, 0.15);
    const auto e = eta.eval(1.1, 0.9);
    const MapJet<double> m = map_jet(0.6, radial_jet(cyl.rho(0.6), e));
    const Vec3 back = piola_inverse(m, piola_forward(m, phi).v);
    CHECK((back - phi.v).norm() < 1e-13);
  }
}

TEST_CASE("piola images are divergence-free and their gradients match finite differences") {
  std::mt19937 rng(4);
  const Cylinder cyl;
  const ShellBasis SB(cyl.L, 4, 4);
  FluidBasisOptions o;
  o.modes = 8;
  const FluidBasis B(cyl, o);
  const auto eta = random_eta(rng, SB, 0.15);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 8; ++t) {
    const double r = 0.1 + 0.85 * u(rng), th = 6.28 * u(rng), z = 0.1 + 1.8 * u(rng);
    const auto e = eta.eval(th, z);
    const MapJet<double> m = map_jet(r, radial_jet(cyl.rho(r), e));
    const auto jets = B.eval(r, th, z);
    const double rx = r + cyl.rho(r).v * e.v;
    const Vec3 x = cartesian(rx, th, z);
    const Mat3 Q = frame_rotation(th);
    for (int k = 0; k < B.size(); ++k) {
      const auto w = piola_forward(m, jets[k]);
      const Mat3 g = eulerian_gradient(w, m, r);
      CHECK(std::abs(g.trace()) < 1e-10 * (1.0 + g.norm()));
      const double h = 1e-5;
      Mat3 gc;
      for (int c = 0; c < 3; ++c) {
        Vec3 d = Vec3::Zero();
        d(c) = h;
        gc.col(c) = (image_at(cyl, B, eta, k, x + d) - image_at(cyl, B, eta, k, x - d)) / (2 * h);
      }
      CHECK((Q.transpose() * gc * Q - g).norm() < 1e-6 * (1.0 + g.norm()));
    }
  }
}

TEST_CASE("normal trace identity and zero-trace preservation") {
  std::mt19937 rng(9);
  const Cylinder cyl;
  const ShellBasis SB(cyl.L, 5, 4);
  for (int t = 0; t < 10; ++t) {
    const auto eta = random_eta(rng, SB, 0.2);
    const auto e = eta.eval(0.3 * t, 0.15 * t + 0.1);
    const VectorJet<double> phi = random_jet(rng);
    CHECK(normal_trace_lhs(cyl.R, e, phi.v) == doctest::Approx((cyl.R + e.v) * phi.v(0)).epsilon(1e-13));
    // a field tangent to Gamma_eta pulls back to one with zero radial trace at r = R
    const SurfaceFrame f = surface_frame(cyl.R, e);
    const Vec3 tangent = f.tau1 + 0.4 * f.tau2;
    const MapJet<double> m = map_jet(cyl.R, radial_jet(cyl.rho(cyl.R), e));
    CHECK(std::abs(piola_inverse(m, tangent)(0)) < 1e-14);
  }
}

TEST_CASE("bound ratios at zero displacement are at most one") {
  const Cylinder cyl;
  FluidBasisOptions o;
  o.modes = 6;
  const FluidBasis B(cyl, o);
  const CylGrid g = volume_grid(cyl.R, cyl.L, 8, 8, 8);
  const auto tab = B.tabulate(g);
  std::vector<VectorJet<double>> phi(g.size());
  for (int i = 0; i < g.size(); ++i) phi[i] = tab[i * B.size() + 3];
  const auto rep = piola_bound_check(cyl, g, TrigPoly<double>(0, 0, cyl.L), phi);
  CHECK(rep.max_value_ratio <= 1.0 + 1e-12);
  CHECK(rep.max_gradient_ratio <= 1.0 + 1e-12);
}
