#pragma once
// Divergence-free lifts of shell data into the fluid domain.
//
// For a lateral flux density g(theta, z) and a radial profile c(r) with
// c(R) = 1 the field
//   q = (c g / r) e_r - c' G~ e_theta - (c' / r) Gbar e_z
// is divergence-free, where G~ is the mean-free theta-antiderivative of
// g - mean_theta(g) and Gbar(z) = int_0^z mean_theta(g). Its radial trace at
// r = R is g / R.
//
//   extend_noslip:  F_delta(xi) = q with c = alpha_1, g = (R + delta) xi,
//                   evaluated at Eulerian points; trace at Gamma_delta is xi e_r.
//   extend_slip:    F^s_eta(xi) = Piola_eta(q) with c = (r / R)^2 rho,
//                   g = (R + eta) xi; normal trace xi e_r . nu^eta.

#include <vector>

#include "fsi/geometry.hpp"
#include "fsi/piola.hpp"
#include "fsi/trigpoly.hpp"

namespace fsi {

template <class T>
struct FluxColumn {
  T g{}, gt{}, gz{}, G{}, Gz{}, Gbar{}, gbar{};
};

// The three trig-polynomials behind the lift: g, G~ and Gbar.
template <class T>
struct FluxPolys {
  TrigPoly<T> g, G, Gbar;
  explicit FluxPolys(const TrigPoly<T>& g_) : g(g_), G(g_.theta_antiderivative()), Gbar(g_.theta_mean().z_antiderivative()) {}
  int kmax() const { return g.kmax(); }
  int pmax() const { return Gbar.pmax(); }
};

template <class T>
std::vector<FluxColumn<T>> flux_columns(const FluxPolys<T>& p, const TrigPolyTable& tab) {
  const auto g = p.g.eval_grid(tab), G = p.G.eval_grid(tab), B = p.Gbar.eval_grid(tab);
  std::vector<FluxColumn<T>> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    out[i].g = g[i].v;
    out[i].gt = g[i].t;
    out[i].gz = g[i].z;
    out[i].G = G[i].v;
    out[i].Gz = G[i].z;
    out[i].Gbar = B[i].v;
    out[i].gbar = B[i].z;
  }
  return out;
}

template <class T>
FluxColumn<T> flux_column_at(const FluxPolys<T>& p, double th, double z) {
  const auto g = p.g.eval(th, z), G = p.G.eval(th, z), B = p.Gbar.eval(th, z);
  return {g.v, g.t, g.z, G.v, G.z, B.v, B.z};
}

// The lift q and its coordinate partials at radius r.
template <class T>
VectorJet<T> flux_lift_jet(const Profile& c, double r, const FluxColumn<T>& f) {
  VectorJet<T> q;
  const double ir = 1.0 / r;
  const double c_r = c.v * ir, c1_r = c.d1 * ir;
  q.v(0) = f.g * c_r;
  q.v(1) = -c.d1 * f.G;
  q.v(2) = -c1_r * f.Gbar;
  q.d(0, 0) = f.g * (c1_r - c_r * ir);
  q.d(1, 0) = -c.d2 * f.G;
  q.d(2, 0) = -(c.d2 * ir - c1_r * ir) * f.Gbar;
  q.d(0, 1) = f.gt * c_r;
  q.d(1, 1) = -c.d1 * (f.g - f.gbar);
  q.d(2, 1) = T(0.0);
  q.d(0, 2) = f.gz * c_r;
  q.d(1, 2) = -c.d1 * f.Gz;
  q.d(2, 2) = -c1_r * f.gbar;
  return q;
}

// flux density g = (R + delta) xi
template <class T>
TrigPoly<T> lateral_flux(double R, const TrigPoly<T>& delta, const TrigPoly<T>& xi) {
  TrigPoly<T> base = delta;
  base(0, 0) += T(R);
  return base.product(xi);
}

// Field value and Eulerian gradient at a point of the deformed domain.
struct EulerianSample {
  Vec3 v = Vec3::Zero();
  Mat3 grad = Mat3::Zero();
};

// F_delta(xi) at the images psi_delta(y) of the grid nodes.
std::vector<EulerianSample> extend_noslip(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& delta,
                                          const TrigPoly<double>& xi);
// F_delta(xi) on Gamma_delta at the (theta, z) nodes of the grid.
std::vector<Vec3> extend_noslip_trace(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& delta,
                                      const TrigPoly<double>& xi);
// F^s_eta(xi) at the images psi_eta(y) of the grid nodes.
std::vector<EulerianSample> extend_slip(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& eta,
                                        const TrigPoly<double>& xi);
// F^s_eta(xi) on Gamma_eta at the (theta, z) nodes of the grid.
std::vector<Vec3> extend_slip_trace(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& eta,
                                    const TrigPoly<double>& xi);

struct ExtensionEstimate {
  double value_ratio = 0.0;     // ||F(xi)||_{L^p} / ||xi||_{L^p1}
  double gradient_ratio = 0.0;  // ||grad F(xi)||_{L^q} / (||xi||_{L^q1} + ||grad xi||_{L^q1} + ||xi||_{L^2})
};

struct EstimateExponents {
  double p = 2.0, p1 = 4.0, q = 2.0, q1 = 4.0;
};

// Maximum ratios over the samples for the slip extension on Omega_eta.
ExtensionEstimate slip_extension_estimate(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& eta,
                                          const std::vector<TrigPoly<double>>& xis, const EstimateExponents& ex);
// Same for the no-slip extension; denominators use (R + delta) xi.
ExtensionEstimate noslip_extension_estimate(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& delta,
                                            const std::vector<TrigPoly<double>>& xis, const EstimateExponents& ex);

}  // namespace fsi
