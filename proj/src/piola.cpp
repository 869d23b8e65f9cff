#include "fsi/piola.hpp"

#include <algorithm>
#include <cmath>

namespace fsi {

double normal_trace_lhs(double R, const ShellPoint<double>& eta, const Vec3& v) {
  RadialJet<double> j;
  j.e = eta.v;
  j.et = eta.t;
  j.ez = eta.z;
  const Mat3 G = map_matrix(R, j);
  const SurfaceFrame f = surface_frame(R, eta);
  return (G * v).dot(f.n);
}

PiolaBoundReport piola_bound_check(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& eta,
                                   const std::vector<VectorJet<double>>& phi) {
  const TrigPolyTable tab(grid.theta, grid.z, cyl.L, eta.kmax(), eta.pmax());
  const auto pts = eta.eval_grid(tab);
  PiolaBoundReport rep;
  for (int iz = 0; iz < grid.nz(); ++iz)
    for (int it = 0; it < grid.nt(); ++it) {
      const ShellPoint<double>& e = pts[grid.column(it, iz)];
      const double grad_eta = std::hypot(e.t, e.z);
      const double hess_eta = std::sqrt(e.tt * e.tt + 2.0 * e.tz * e.tz + e.zz * e.zz);
      const double base = 1.0 + std::abs(e.v) + grad_eta;
      for (int ir = 0; ir < grid.nr(); ++ir) {
        const int i = grid.node(ir, it, iz);
        const double r = grid.r[ir];
        const MapJet<double> m = map_jet(r, radial_jet(cyl.rho(r), e));
        const VectorJet<double> w = piola_forward(m, phi[i]);
        const double pn = phi[i].v.norm();
        const double gpn = physical_gradient(phi[i], r).norm();
        const double wn = w.v.norm();
        const double gwn = physical_gradient(w, r).norm();
        if (pn > 1e-12) rep.max_value_ratio = std::max(rep.max_value_ratio, wn / (base * pn));
        const double den = base * base * base * pn + hess_eta * pn + base * gpn;
        if (den > 1e-12) rep.max_gradient_ratio = std::max(rep.max_gradient_ratio, gwn / den);
      }
    }
  return rep;
}

}  // namespace fsi
