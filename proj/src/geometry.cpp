#include "fsi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fsi {

Profile smoothstep(double x, double x0, double x1) {
  if (x <= x0) return {0.0, 0.0, 0.0};
  if (x >= x1) return {1.0, 0.0, 0.0};
  const double w = x1 - x0, s = (x - x0) / w;
  const double s2 = s * s, s3 = s2 * s;
  return {s3 * (10.0 - 15.0 * s + 6.0 * s2), 30.0 * s2 * (1.0 - s) * (1.0 - s) / w,
          60.0 * s * (1.0 - s) * (1.0 - 2.0 * s) / (w * w)};
}

Profile Cylinder::slip_profile(double r) const {
  const Profile p = rho(r);
  const double q = (r / R) * (r / R), dq = 2.0 * r / (R * R), ddq = 2.0 / (R * R);
  return {q * p.v, dq * p.v + q * p.d1, ddq * p.v + 2.0 * dq * p.d1 + q * p.d2};
}

double Cylinder::max_rho_slope() const { return 15.0 / (8.0 * (R - b - a)); }

void Cylinder::validate() const {
  if (!(R > 0.0) || !(L > 0.0)) throw InvalidCutoff("cylinder dimensions must be positive");
  if (!(a > 0.0) || !(a < R - b) || !(b > 0.0))
    throw InvalidCutoff("need 0 < a < R - b with b > 0 (a=" + std::to_string(a) + ", b=" + std::to_string(b) + ")");
  if (!(M > 0.0) || !(M < R)) throw InvalidCutoff("need 0 < M < R");
  if (!(M * max_rho_slope() < 1.0))
    throw InvalidCutoff("M * max rho' = " + std::to_string(M * max_rho_slope()) + " must be < 1");
  if (!(margin > 0.0) || !(margin < R)) throw InvalidCutoff("need 0 < margin < R");
}

SurfaceFrame surface_frame(double R, const ShellPoint<double>& eta) {
  if (std::abs(eta.v) >= R) throw ContactViolation("|eta| >= R on the lateral boundary");
  SurfaceFrame f;
  const double rr = R + eta.v;
  f.tau1 = Vec3(eta.t, rr, 0.0);
  f.tau2 = Vec3(eta.z, 0.0, 1.0);
  f.n = f.tau1.cross(f.tau2);
  f.J = f.n.norm();
  f.nu = f.n / f.J;
  return f;
}

double jacobian_closed_form(double R, const ShellPoint<double>& eta) {
  const double rr = R + eta.v;
  return std::sqrt(rr * rr * (1.0 + eta.z * eta.z) + eta.t * eta.t);
}

DomainMap domain_map(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& eta) {
  const TrigPolyTable tab(grid.theta, grid.z, cyl.L, eta.kmax(), eta.pmax());
  const auto pts = eta.eval_grid(tab);
  DomainMap m;
  const int n = grid.size();
  m.eta_ext.resize(n);
  m.radius.resize(n);
  m.G.resize(n);
  m.detG.resize(n);
  for (int iz = 0; iz < grid.nz(); ++iz)
    for (int it = 0; it < grid.nt(); ++it) {
      const ShellPoint<double>& e = pts[grid.column(it, iz)];
      for (int ir = 0; ir < grid.nr(); ++ir) {
        const int i = grid.node(ir, it, iz);
        const double r = grid.r[ir];
        const RadialJet<double> j = radial_jet(cyl.rho(r), e);
        m.eta_ext[i] = j.e;
        m.radius[i] = r + j.e;
        m.G[i] = map_matrix(r, j);
        m.detG[i] = map_det(r, j);
        if (!(m.detG[i] > 0.0))
          throw DegenerateMap("det G <= 0 at r=" + std::to_string(r) + " theta=" + std::to_string(grid.theta[it]) +
                              " z=" + std::to_string(grid.z[iz]));
      }
    }
  return m;
}

double invert_radius(const Cylinder& cyl, double eta, double rx) {
  double r = std::clamp(rx - eta, 0.0, cyl.R);
  for (int it = 0; it < 60; ++it) {
    const Profile p = cyl.rho(r);
    const double f = r + p.v * eta - rx;
    const double df = 1.0 + p.d1 * eta;
    const double dr = f / df;
    r -= dr;
    if (std::abs(dr) < 1e-15 * (1.0 + std::abs(r))) break;
  }
  return r;
}

}  // namespace fsi
