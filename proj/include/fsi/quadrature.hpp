#pragma once
// Quadrature rules and the tensor grids on the reference cylinder.

#include <cstddef>
#include <vector>

namespace fsi {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

// n-point Gauss-Legendre rule on [a, b].
Rule gauss_legendre(int n, double a, double b);
// Uniform periodic trapezoid rule on [0, 2pi): nodes 2 pi i / n, equal weights.
Rule periodic_trapezoid(int n);

// Pairwise summation of a sequence, used wherever a scalar reduction must be
// reproducible independent of vector length.
double pairwise_sum(const double* x, std::size_t n);
inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

// Tensor grid in (r, theta, z). Node index = (iz * ntheta + it) * nr + ir, so
// r runs fastest and each (theta, z) column is contiguous. Column index
// = iz * ntheta + it. r-weights are plain dr weights; the Jacobian factor is
// applied by whoever integrates.
struct CylGrid {
  std::vector<double> r, wr;
  std::vector<double> theta;
  double wtheta = 0.0;
  std::vector<double> z, wz;

  int nr() const { return static_cast<int>(r.size()); }
  int nt() const { return static_cast<int>(theta.size()); }
  int nz() const { return static_cast<int>(z.size()); }
  int columns() const { return nt() * nz(); }
  int size() const { return nr() * columns(); }
  int column(int it, int iz) const { return iz * nt() + it; }
  int node(int ir, int it, int iz) const { return (iz * nt() + it) * nr() + ir; }
  // reference volume weight r dr dtheta dz
  double ref_weight(int ir, int /*it*/, int iz) const { return r[ir] * wr[ir] * wtheta * wz[iz]; }
  // surface weight dtheta dz on omega
  double surf_weight(int iz) const { return wtheta * wz[iz]; }
};

// Volume grid: nr Gauss points on (0, R), nt uniform theta, nz Gauss points on (0, L).
CylGrid volume_grid(double R, double L, int nr, int nt, int nz);
// Surface grid on omega: single radius R with the same (theta, z) nodes as volume_grid.
CylGrid surface_grid(double R, double L, int nt, int nz);
// Disk grid at a fixed height z0: Gauss r on (0, R), uniform theta.
CylGrid disk_grid(double R, double z0, int nr, int nt);

}  // namespace fsi
