#include "fsi/extension.hpp"

#include <algorithm>
#include <cmath>

#include "fsi/norms.hpp"

namespace fsi {

namespace {

TrigPolyTable table_for(const CylGrid& grid, double L, int kmax, int pmax) {
  return TrigPolyTable(grid.theta, grid.z, L, kmax, pmax);
}

}  // namespace

std::vector<EulerianSample> extend_noslip(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& delta,
                                          const TrigPoly<double>& xi) {
  const FluxPolys<double> fp(lateral_flux(cyl.R, delta, xi));
  const TrigPolyTable tab = table_for(grid, cyl.L, std::max(fp.kmax(), delta.kmax()), std::max(fp.pmax(), delta.pmax()));
  const auto cols = flux_columns(fp, tab);
  const auto dpts = delta.eval_grid(tab);
  std::vector<EulerianSample> out(grid.size());
  for (int iz = 0; iz < grid.nz(); ++iz)
    for (int it = 0; it < grid.nt(); ++it) {
      const int c = grid.column(it, iz);
      for (int ir = 0; ir < grid.nr(); ++ir) {
        const double rx = grid.r[ir] + cyl.rho(grid.r[ir]).v * dpts[c].v;
        const VectorJet<double> q = flux_lift_jet(cyl.alpha1(rx), rx, cols[c]);
        EulerianSample& s = out[grid.node(ir, it, iz)];
        s.v = q.v;
        s.grad = physical_gradient(q, rx);
      }
    }
  return out;
}

std::vector<Vec3> extend_noslip_trace(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& delta,
                                      const TrigPoly<double>& xi) {
  const FluxPolys<double> fp(lateral_flux(cyl.R, delta, xi));
  const TrigPolyTable tab = table_for(grid, cyl.L, std::max(fp.kmax(), delta.kmax()), std::max(fp.pmax(), delta.pmax()));
  const auto cols = flux_columns(fp, tab);
  const auto dpts = delta.eval_grid(tab);
  std::vector<Vec3> out(grid.columns());
  for (int c = 0; c < grid.columns(); ++c) {
    const double rx = cyl.R + dpts[c].v;
    out[c] = flux_lift_jet(cyl.alpha1(rx), rx, cols[c]).v;
  }
  return out;
}

std::vector<EulerianSample> extend_slip(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& eta,
                                        const TrigPoly<double>& xi) {
  const FluxPolys<double> fp(lateral_flux(cyl.R, eta, xi));
  const TrigPolyTable tab = table_for(grid, cyl.L, std::max(fp.kmax(), eta.kmax()), std::max(fp.pmax(), eta.pmax()));
  const auto cols = flux_columns(fp, tab);
  const auto epts = eta.eval_grid(tab);
  std::vector<EulerianSample> out(grid.size());
  for (int iz = 0; iz < grid.nz(); ++iz)
    for (int it = 0; it < grid.nt(); ++it) {
      const int c = grid.column(it, iz);
      for (int ir = 0; ir < grid.nr(); ++ir) {
        const double r = grid.r[ir];
        const MapJet<double> m = map_jet(r, radial_jet(cyl.rho(r), epts[c]));
        const VectorJet<double> w = piola_forward(m, flux_lift_jet(cyl.slip_profile(r), r, cols[c]));
        EulerianSample& s = out[grid.node(ir, it, iz)];
        s.v = w.v;
        s.grad = eulerian_gradient(w, m, r);
      }
    }
  return out;
}

std::vector<Vec3> extend_slip_trace(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& eta,
                                    const TrigPoly<double>& xi) {
  const FluxPolys<double> fp(lateral_flux(cyl.R, eta, xi));
  const TrigPolyTable tab = table_for(grid, cyl.L, std::max(fp.kmax(), eta.kmax()), std::max(fp.pmax(), eta.pmax()));
  const auto cols = flux_columns(fp, tab);
  const auto epts = eta.eval_grid(tab);
  std::vector<Vec3> out(grid.columns());
  for (int c = 0; c < grid.columns(); ++c) {
    const MapJet<double> m = map_jet(cyl.R, radial_jet(cyl.rho(cyl.R), epts[c]));
    out[c] = piola_forward(m, flux_lift_jet(cyl.slip_profile(cyl.R), cyl.R, cols[c])).v;
  }
  return out;
}

namespace {

ExtensionEstimate estimate(const std::vector<double>& dx, const std::vector<EulerianSample>& F,
                           const TrigPoly<double>& xi_den, const CylGrid& surf, const EstimateExponents& ex) {
  std::vector<double> v(F.size()), g(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) {
    v[i] = F[i].v.norm();
    g[i] = F[i].grad.norm();
  }
  ExtensionEstimate e;
  const double nv = lp_norm(v, dx, ex.p), ng = lp_norm(g, dx, ex.q);
  const double d1 = shell_norm(xi_den, surf, ex.p1);
  const double d2 = shell_seminorm(xi_den, surf, ex.q1, 0) + shell_seminorm(xi_den, surf, ex.q1, 1) +
                    shell_seminorm(xi_den, surf, 2.0, 0);
  e.value_ratio = d1 > 0.0 ? nv / d1 : (nv == 0.0 ? 0.0 : INFINITY);
  e.gradient_ratio = d2 > 0.0 ? ng / d2 : (ng == 0.0 ? 0.0 : INFINITY);
  return e;
}

std::vector<double> deformed_weights(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& eta) {
  const DomainMap m = domain_map(cyl, grid, eta);
  std::vector<double> dx(grid.size());
  for (int iz = 0; iz < grid.nz(); ++iz)
    for (int it = 0; it < grid.nt(); ++it)
      for (int ir = 0; ir < grid.nr(); ++ir) {
        const int i = grid.node(ir, it, iz);
        dx[i] = grid.wr[ir] * grid.wtheta * grid.wz[iz] * m.detG[i];
      }
  return dx;
}

}  // namespace

ExtensionEstimate slip_extension_estimate(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& eta,
                                          const std::vector<TrigPoly<double>>& xis, const EstimateExponents& ex) {
  const CylGrid surf = surface_grid(cyl.R, cyl.L, grid.nt(), grid.nz());
  const auto dx = deformed_weights(cyl, grid, eta);
  ExtensionEstimate out;
  for (const auto& xi : xis) {
    const auto e = estimate(dx, extend_slip(cyl, grid, eta, xi), xi, surf, ex);
    out.value_ratio = std::max(out.value_ratio, e.value_ratio);
    out.gradient_ratio = std::max(out.gradient_ratio, e.gradient_ratio);
  }
  return out;
}

ExtensionEstimate noslip_extension_estimate(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& delta,
                                            const std::vector<TrigPoly<double>>& xis, const EstimateExponents& ex) {
  const CylGrid surf = surface_grid(cyl.R, cyl.L, grid.nt(), grid.nz());
  const auto dx = deformed_weights(cyl, grid, delta);
  ExtensionEstimate out;
  for (const auto& xi : xis) {
    const auto e = estimate(dx, extend_noslip(cyl, grid, delta, xi), lateral_flux(cyl.R, delta, xi), surf, ex);
    out.value_ratio = std::max(out.value_ratio, e.value_ratio);
    out.gradient_ratio = std::max(out.gradient_ratio, e.gradient_ratio);
  }
  return out;
}

}  // namespace fsi
