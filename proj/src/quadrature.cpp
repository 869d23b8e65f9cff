#include "fsi/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsi {

Rule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  Rule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.x[i] = mid - half * x;
    rule.x[n - 1 - i] = mid + half * x;
    rule.w[i] = rule.w[n - 1 - i] = half * w;
  }
  if (n % 2 == 1) rule.x[n / 2] = mid;
  return rule;
}

Rule periodic_trapezoid(int n) {
  Rule rule;
  rule.x.resize(n);
  rule.w.assign(n, 2.0 * std::numbers::pi / n);
  for (int i = 0; i < n; ++i) rule.x[i] = 2.0 * std::numbers::pi * i / n;
  return rule;
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

CylGrid volume_grid(double R, double L, int nr, int nt, int nz) {
  CylGrid g;
  const Rule rr = gauss_legendre(nr, 0.0, R);
  const Rule tt = periodic_trapezoid(nt);
  const Rule zz = gauss_legendre(nz, 0.0, L);
  g.r = rr.x;
  g.wr = rr.w;
  g.theta = tt.x;
  g.wtheta = tt.w[0];
  g.z = zz.x;
  g.wz = zz.w;
  return g;
}

CylGrid surface_grid(double R, double L, int nt, int nz) {
  CylGrid g = volume_grid(R, L, 1, nt, nz);
  g.r = {R};
  g.wr = {1.0};
  return g;
}

CylGrid disk_grid(double R, double z0, int nr, int nt) {
  CylGrid g = volume_grid(R, 1.0, nr, nt, 1);
  g.z = {z0};
  g.wz = {1.0};
  return g;
}

}  // namespace fsi
