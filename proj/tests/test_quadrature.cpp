#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fsi/quadrature.hpp"
#include "fsi/shell_basis.hpp"
#include "fsi/trigpoly.hpp"

using namespace fsi;

TEST_CASE("gauss rule integrates polynomials up to degree 2n-1 exactly") {
  for (int n : {1, 2, 5, 12, 24}) {
    const Rule q = gauss_legendre(n, 0.3, 1.7);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i) s += q.w[i] * std::pow(q.x[i], k);
      const double exact = (std::pow(1.7, k + 1) - std::pow(0.3, k + 1)) / (k + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("periodic trapezoid is exact for trigonometric polynomials below the node count") {
  const Rule q = periodic_trapezoid(16);
  for (int m = 0; m < 16; ++m) {
    double c = 0.0, s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      c += q.w[i] * std::cos(m * q.x[i]);
      s += q.w[i] * std::sin(m * q.x[i]);
    }
    CHECK(c == doctest::Approx(m == 0 ? 2.0 * std::numbers::pi : 0.0).epsilon(1e-14));
    CHECK(std::abs(s) < 1e-13);
  }
}

TEST_CASE("pairwise sum matches exact sum of integers") {
  std::vector<double> x(1001);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = double(i);
  CHECK(pairwise_sum(x) == 1000.0 * 1001.0 / 2.0);
}

namespace {
TrigPoly<double> random_trigpoly(std::mt19937& rng, int k, int p, double L) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TrigPoly<double> f(k, p, L);
  for (int j = 0; j < 2 * k + 1; ++j)
    for (int q = 0; q <= p; ++q) f(j, q) = u(rng);
  return f;
}
}  // namespace

TEST_CASE("trig-polynomial algebra agrees with pointwise evaluation") {
  std::mt19937 rng(7);
  const double L = 2.0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_trigpoly(rng, 2, 3, L), g = random_trigpoly(rng, 3, 2, L);
    const auto fg = f.product(g);
    const auto F = f.theta_antiderivative();
    const auto Z = f.z_antiderivative();
    const double h = 1e-5;
    for (double th : {0.1, 1.3, 4.0})
      for (double z : {0.2, 1.1, 1.9}) {
        CHECK(fg.eval(th, z).v == doctest::Approx(f.eval(th, z).v * g.eval(th, z).v).epsilon(1e-12));
        // d/dtheta of the mean-free antiderivative recovers f - mean(f)
        const double dF = (F.eval(th + h, z).v - F.eval(th - h, z).v) / (2 * h);
        CHECK(dF == doctest::Approx(f.eval(th, z).v - f.theta_mean().eval(th, z).v).epsilon(1e-8));
        const double dZ = (Z.eval(th, z + h).v - Z.eval(th, z - h).v) / (2 * h);
        CHECK(dZ == doctest::Approx(f.eval(th, z).v).epsilon(1e-8));
        const auto p = f.eval(th, z);
        CHECK(p.t == doctest::Approx(f.d_theta().eval(th, z).v).epsilon(1e-12));
        CHECK(p.z == doctest::Approx(f.d_z().eval(th, z).v).epsilon(1e-12));
        CHECK(p.tz == doctest::Approx(f.d_theta().d_z().eval(th, z).v).epsilon(1e-12));
        CHECK(p.zz == doctest::Approx(f.d_z().d_z().eval(th, z).v).epsilon(1e-12));
        CHECK(p.tt == doctest::Approx(f.d_theta().d_theta().eval(th, z).v).epsilon(1e-12));
      }
    // theta mean of the antiderivative vanishes
    double mean = 0.0;
    const Rule q = periodic_trapezoid(32);
    for (std::size_t i = 0; i < q.size(); ++i) mean += q.w[i] * F.eval(q.x[i], 0.7).v;
    CHECK(std::abs(mean) < 1e-13);
  }
}

TEST_CASE("grid evaluation matches pointwise evaluation") {
  std::mt19937 rng(3);
  const auto f = random_trigpoly(rng, 2, 5, 2.0);
  const CylGrid g = surface_grid(1.0, 2.0, 8, 5);
  const TrigPolyTable tab(g.theta, g.z, 2.0, 2, 5);
  const auto pts = f.eval_grid(tab);
  for (int iz = 0; iz < g.nz(); ++iz)
    for (int it = 0; it < g.nt(); ++it) {
      const auto a = pts[g.column(it, iz)];
      const auto b = f.eval(g.theta[it], g.z[iz]);
      CHECK(a.v == doctest::Approx(b.v).epsilon(1e-13));
      CHECK(a.tz == doctest::Approx(b.tz).epsilon(1e-13));
      CHECK(a.zz == doctest::Approx(b.zz).epsilon(1e-12));
    }
}

TEST_CASE("shell basis is L2-orthonormal and clamped") {
  const double L = 2.0;
  const ShellBasis B(L, 5, 6);
  REQUIRE(B.size() == 30);
  // independent fine quadrature, direct evaluation
  const Rule qt = periodic_trapezoid(24), qz = gauss_legendre(20, 0.0, L);
  std::vector<TrigPoly<double>> f;
  for (int k = 0; k < B.size(); ++k) f.push_back(B.mode_function(k));
  Eigen::MatrixXd vals(qt.size() * qz.size(), B.size());
  Eigen::VectorXd w(qt.size() * qz.size());
  for (std::size_t i = 0; i < qt.size(); ++i)
    for (std::size_t j = 0; j < qz.size(); ++j) {
      const std::size_t n = i * qz.size() + j;
      w(n) = qt.w[i] * qz.w[j];
      for (int k = 0; k < B.size(); ++k) vals(n, k) = f[k].eval(qt.x[i], qz.x[j]).v;
    }
  const Eigen::MatrixXd gram = vals.transpose() * w.asDiagonal() * vals;
  CHECK((gram - Eigen::MatrixXd::Identity(B.size(), B.size())).cwiseAbs().maxCoeff() < 1e-12);
  for (int k = 0; k < B.size(); ++k)
    for (double z : {0.0, L})
      for (double th : {0.0, 1.0, 2.5}) {
        const auto p = f[k].eval(th, z);
        CHECK(std::abs(p.v) < 1e-13);
        CHECK(std::abs(p.z) < 1e-12);
      }
  // ordering: lowest combined index first
  CHECK(B.mode(0).trig == 0);
  CHECK(B.mode(0).zindex == 0);
}

TEST_CASE("constant field on omega has L2 norm |c| sqrt(2 pi L)") {
  const double L = 2.0, c = -0.37;
  const CylGrid g = surface_grid(1.0, L, 16, 12);
  double s = 0.0;
  for (int iz = 0; iz < g.nz(); ++iz)
    for (int it = 0; it < g.nt(); ++it) s += g.surf_weight(iz) * c * c;
  CHECK(std::sqrt(s) == doctest::Approx(std::abs(c) * std::sqrt(2.0 * std::numbers::pi * L)).epsilon(1e-14));
}
