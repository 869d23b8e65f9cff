#include <cmath>
#include <random>

#include "doctest.h"
#include "fsi/fluid_basis.hpp"

using namespace fsi;

namespace {
// Cartesian value of a reference field, for finite-difference oracles
Vec3 cart_value(const FluidBasis& B, int k, const Vec3& x) {
  const double r = std::hypot(x(0), x(1)), th = std::atan2(x(1), x(0));
  return frame_rotation(th) * B.eval(r, th, x(2))[k].v;
}
}  // namespace

TEST_CASE("fluid basis is divergence-free, tangential on the wall and orthonormal") {
  const Cylinder cyl;
  FluidBasisOptions o;
  o.modes = 16;
  const FluidBasis B(cyl, o);
  REQUIRE(B.size() == 16);
  CHECK(B.eigenvalues().front() == doctest::Approx(0.0).scale(1.0));
  for (std::size_t k = 1; k < B.eigenvalues().size(); ++k) CHECK(B.eigenvalues()[k] >= B.eigenvalues()[k - 1] - 1e-9);

  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const double r = 0.05 + 0.95 * u(rng), th = 6.283 * u(rng), z = cyl.L * u(rng);
    const auto jets = B.eval(r, th, z);
    const auto wall = B.eval(cyl.R, th, z);
    for (int k = 0; k < B.size(); ++k) {
      const Mat3 g = physical_gradient(jets[k], r);
      const double scale = 1.0 + g.norm();
      CHECK(std::abs(g.trace()) <= 1e-8 * scale);
      CHECK(std::abs(wall[k].v(0)) <= 1e-8 * (1.0 + wall[k].v.norm()));
    }
  }

  // orthonormality on an independent grid with the same exactness
  const CylGrid q = volume_grid(cyl.R, cyl.L, 20, 16, 40);
  const auto tab = B.tabulate(q);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(B.size(), B.size());
  for (int iz = 0; iz < q.nz(); ++iz)
    for (int it = 0; it < q.nt(); ++it)
      for (int ir = 0; ir < q.nr(); ++ir) {
        const int i = q.node(ir, it, iz);
        const double w = q.ref_weight(ir, it, iz);
        for (int a = 0; a < B.size(); ++a)
          for (int b = 0; b < B.size(); ++b)
            gram(a, b) += w * tab[i * B.size() + a].v.dot(tab[i * B.size() + b].v);
      }
  CHECK((gram - Eigen::MatrixXd::Identity(B.size(), B.size())).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("fluid basis jets agree with Cartesian finite differences") {
  const Cylinder cyl;
  FluidBasisOptions o;
  o.modes = 10;
  const FluidBasis B(cyl, o);
  const double h = 1e-5;
  for (const Vec3 x : {Vec3(0.3, 0.2, 0.7), Vec3(-0.5, 0.6, 1.4), Vec3(0.1, -0.8, 0.2)}) {
    const double r = std::hypot(x(0), x(1)), th = std::atan2(x(1), x(0));
    const auto jets = B.eval(r, th, x(2));
    const Mat3 Q = frame_rotation(th);
    for (int k = 0; k < B.size(); ++k) {
      Mat3 gc;
      for (int c = 0; c < 3; ++c) {
        Vec3 e = Vec3::Zero();
        e(c) = h;
        gc.col(c) = (cart_value(B, k, x + e) - cart_value(B, k, x - e)) / (2 * h);
      }
      const Mat3 g = physical_gradient(jets[k], r);
      CHECK((Q.transpose() * gc * Q - g).norm() < 1e-6 * (1.0 + g.norm()));
    }
  }
}

TEST_CASE("ritz failure when too many modes are requested") {
  const Cylinder cyl;
  FluidBasisOptions o;
  o.theta_max = 0;
  o.kz_max = 0;
  o.radial = 1;
  o.modes = 5;
  CHECK_THROWS_AS(FluidBasis(cyl, o), EigensolverFailure);
}
