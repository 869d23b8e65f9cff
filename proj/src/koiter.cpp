#include "fsi/koiter.hpp"

#include <algorithm>
#include <cmath>

namespace fsi {

namespace {

Mat2 sym(double a11, double a12, double a22) {
  Mat2 m;
  m << a11, a12, a12, a22;
  return m;
}

std::vector<SP> eval_surface(const CylGrid& surf, const TrigPoly<double>& f) {
  return f.eval_grid(TrigPolyTable(surf.theta, surf.z, f.length(), f.kmax(), f.pmax()));
}

std::vector<double> surface_weights(const CylGrid& surf) {
  std::vector<double> w(surf.columns());
  for (int iz = 0; iz < surf.nz(); ++iz)
    for (int it = 0; it < surf.nt(); ++it) w[surf.column(it, iz)] = surf.surf_weight(iz);
  return w;
}

}  // namespace

Mat2 metric_change(const KoiterParams& p, const SP& e) {
  const double rr = p.R + e.v;
  const double g22 = (p.metric == MetricConvention::AsPrinted ? 1.0 : 0.0) + e.z * e.z;
  return sym(rr * rr + e.t * e.t - p.R * p.R, e.t * e.z, g22);
}

Mat2 curvature_change(const KoiterParams& p, const SP& e) {
  const double R = p.R, gam = 1.0 + e.v / R, rr = R + e.v;
  return sym(gam * e.tt - rr * rr / R - 2.0 / R * e.t * e.t + R, gam * e.tz - e.t * e.z / R, gam * e.zz);
}

Mat2 metric_change_derivative(const KoiterParams& p, const SP& e, const SP& x) {
  return sym(2.0 * (p.R + e.v) * x.v + 2.0 * e.t * x.t, x.t * e.z + e.t * x.z, 2.0 * e.z * x.z);
}

Mat2 curvature_change_derivative(const KoiterParams& p, const SP& e, const SP& x) {
  const double R = p.R, gam = 1.0 + e.v / R;
  return sym(x.v / R * e.tt + gam * x.tt - 2.0 / R * (R + e.v) * x.v - 4.0 / R * e.t * x.t,
             x.v / R * e.tz + gam * x.tz - (x.t * e.z + e.t * x.z) / R, x.v / R * e.zz + gam * x.zz);
}

Mat2 metric_change_lin(const KoiterParams& p, const SP& d, const SP& e) {
  const double g22 = (p.metric == MetricConvention::AsPrinted ? 1.0 : 0.0) + d.z * e.z;
  return sym((p.R + d.v) * (p.R + e.v) + d.t * e.t - p.R * p.R, 0.5 * (d.t * e.z + e.t * d.z), g22);
}

Mat2 curvature_change_lin(const KoiterParams& p, const SP& d, const SP& e) {
  const double R = p.R, gam = 1.0 + d.v / R;
  return sym(gam * e.tt - (R + e.v) * (R + d.v) / R - 2.0 / R * d.t * e.t + R,
             gam * e.tz - 0.5 * (d.t * e.z + e.t * d.z) / R, gam * e.zz);
}

Mat2 metric_change_lin_derivative(const KoiterParams& p, const SP& d, const SP& x) {
  return sym((p.R + d.v) * x.v + d.t * x.t, 0.5 * (d.t * x.z + x.t * d.z), d.z * x.z);
}

Mat2 curvature_change_lin_derivative(const KoiterParams& p, const SP& d, const SP& x) {
  const double R = p.R, gam = 1.0 + d.v / R;
  return sym(gam * x.tt - (R + d.v) * x.v / R - 2.0 / R * d.t * x.t, gam * x.tz - 0.5 * (d.t * x.z + x.t * d.z) / R,
             gam * x.zz);
}

double elasticity_min_eigenvalue(const KoiterParams& p) {
  Eigen::Matrix3d A;
  A << p.lambda + 2.0 * p.mu, p.lambda, 0.0, p.lambda, p.lambda + 2.0 * p.mu, 0.0, 0.0, 0.0, 2.0 * p.mu;
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(A).eigenvalues().minCoeff();
}

double koiter_energy(const KoiterParams& p, const CylGrid& surf, const TrigPoly<double>& eta) {
  const auto e = eval_surface(surf, eta);
  const auto w = surface_weights(surf);
  std::vector<double> t(e.size());
  const double c1 = p.h / 6.0, c2 = p.h * p.h * p.h / 48.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Mat2 G = metric_change(p, e[i]), Rs = curvature_change(p, e[i]);
    t[i] = w[i] * (c1 * elastic_product(p, G, G) + c2 * elastic_product(p, Rs, Rs));
  }
  return pairwise_sum(t);
}

double koiter_form(const KoiterParams& p, const CylGrid& surf, const TrigPoly<double>& eta, const TrigPoly<double>& xi) {
  const auto e = eval_surface(surf, eta), x = eval_surface(surf, xi);
  const auto w = surface_weights(surf);
  std::vector<double> t(e.size());
  const double c1 = p.h / 6.0, c2 = p.h * p.h * p.h / 48.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    t[i] = w[i] * (c1 * elastic_product(p, metric_change(p, e[i]), metric_change_derivative(p, e[i], x[i])) +
                   c2 * elastic_product(p, curvature_change(p, e[i]), curvature_change_derivative(p, e[i], x[i])));
  }
  return pairwise_sum(t);
}

double koiter_energy_lin(const KoiterParams& p, const CylGrid& surf, const TrigPoly<double>& delta,
                         const TrigPoly<double>& eta) {
  const auto d = eval_surface(surf, delta), e = eval_surface(surf, eta);
  const auto w = surface_weights(surf);
  std::vector<double> t(e.size());
  const double c1 = p.h / 6.0, c2 = p.h * p.h * p.h / 48.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Mat2 G = metric_change_lin(p, d[i], e[i]), Rs = curvature_change_lin(p, d[i], e[i]);
    t[i] = w[i] * (c1 * elastic_product(p, G, G) + c2 * elastic_product(p, Rs, Rs));
  }
  return pairwise_sum(t);
}

double koiter_form_lin(const KoiterParams& p, const CylGrid& surf, const TrigPoly<double>& delta,
                       const TrigPoly<double>& eta, const TrigPoly<double>& xi) {
  const auto d = eval_surface(surf, delta), e = eval_surface(surf, eta), x = eval_surface(surf, xi);
  const auto w = surface_weights(surf);
  std::vector<double> t(e.size());
  const double c1 = p.h / 6.0, c2 = p.h * p.h * p.h / 48.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    t[i] = w[i] * (c1 * elastic_product(p, metric_change_lin(p, d[i], e[i]), metric_change_lin_derivative(p, d[i], x[i])) +
                   c2 * elastic_product(p, curvature_change_lin(p, d[i], e[i]),
                                        curvature_change_lin_derivative(p, d[i], x[i])));
  }
  return pairwise_sum(t);
}

double bending_form_linear(const CylGrid& surf, const TrigPoly<double>& eta, const TrigPoly<double>& xi) {
  const auto e = eval_surface(surf, eta), x = eval_surface(surf, xi);
  const auto w = surface_weights(surf);
  std::vector<double> t(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) t[i] = w[i] * (e[i].tt * x[i].tt + 2.0 * e[i].tz * x[i].tz + e[i].zz * x[i].zz);
  return pairwise_sum(t);
}

double bending_energy_linear(const CylGrid& surf, const TrigPoly<double>& eta) {
  return 0.5 * bending_form_linear(surf, eta, eta);
}

KoiterLinearSystem koiter_lin_system(const KoiterParams& p, const std::vector<double>& w, const std::vector<SP>& delta,
                                     const std::vector<std::vector<SP>>& modes) {
  const int n = static_cast<int>(modes.size());
  const std::size_t N = w.size();
  const double c1 = p.h / 6.0, c2 = p.h * p.h * p.h / 48.0;
  // columns of the linear maps in Mandel-like coordinates, weighted so that plain dot products give A S : T
  MatrixXd Gm(N * 3, n), Rm(N * 3, n);
  VectorXd G0(N * 3), R0(N * 3);
  const SP zero;
  const double sl = std::sqrt(2.0 * p.mu), s2 = std::sqrt(4.0 * p.mu);
  auto pack = [&](const Mat2& T, double wi, double* out) {
    // A S : T = lambda trS trT + 2 mu (S11 T11 + S22 T22 + 2 S12 T12); factor lambda part separately below
    const double sw = std::sqrt(wi);
    out[0] = sw * sl * T(0, 0);
    out[1] = sw * sl * T(1, 1);
    out[2] = sw * s2 * T(0, 1);
  };
  VectorXd trG(N), trR(N);
  MatrixXd trGm(N, n), trRm(N, n);
  for (std::size_t i = 0; i < N; ++i) {
    const Mat2 g0 = metric_change_lin(p, delta[i], zero), r0 = curvature_change_lin(p, delta[i], zero);
    pack(g0, w[i], &G0(3 * i));
    pack(r0, w[i], &R0(3 * i));
    trG(i) = std::sqrt(w[i]) * g0.trace();
    trR(i) = std::sqrt(w[i]) * r0.trace();
    for (int k = 0; k < n; ++k) {
      const Mat2 dg = metric_change_lin_derivative(p, delta[i], modes[k][i]);
      const Mat2 dr = curvature_change_lin_derivative(p, delta[i], modes[k][i]);
      double buf[3];
      pack(dg, w[i], buf);
      for (int c = 0; c < 3; ++c) Gm(3 * i + c, k) = buf[c];
      pack(dr, w[i], buf);
      for (int c = 0; c < 3; ++c) Rm(3 * i + c, k) = buf[c];
      trGm(i, k) = std::sqrt(w[i]) * dg.trace();
      trRm(i, k) = std::sqrt(w[i]) * dr.trace();
    }
  }
  KoiterLinearSystem s;
  s.K = c1 * (Gm.transpose() * Gm + p.lambda * trGm.transpose() * trGm) +
        c2 * (Rm.transpose() * Rm + p.lambda * trRm.transpose() * trRm);
  s.f0 = c1 * (Gm.transpose() * G0 + p.lambda * trGm.transpose() * trG) +
         c2 * (Rm.transpose() * R0 + p.lambda * trRm.transpose() * trR);
  s.e0 = c1 * (G0.squaredNorm() + p.lambda * trG.squaredNorm()) + c2 * (R0.squaredNorm() + p.lambda * trR.squaredNorm());
  return s;
}

CoercivityFit coercivity_fit(const KoiterParams& p, const CylGrid& surf, const std::vector<TrigPoly<double>>& etas) {
  CoercivityFit fit;
  const auto w = surface_weights(surf);
  std::vector<double> K, rhs;
  for (const auto& eta : etas) {
    const auto e = eval_surface(surf, eta);
    std::vector<double> t(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      const double g2 = e[i].t * e[i].t + e[i].z * e[i].z;
      const double h2 = e[i].tt * e[i].tt + 2.0 * e[i].tz * e[i].tz + e[i].zz * e[i].zz;
      t[i] = w[i] * (std::pow(e[i].v, 4) + g2 * g2 + p.h * p.h * h2);
    }
    K.push_back(koiter_energy(p, surf, eta));
    rhs.push_back(pairwise_sum(t));
  }
  fit.samples = static_cast<int>(K.size());
  // largest slope c for which every sample obeys K + C0 >= c rhs with C0 set by the
  // sample of smallest rhs; then C0 is the tightest offset for that c.
  double cmin = INFINITY;
  for (std::size_t i = 0; i < K.size(); ++i)
    if (rhs[i] > 0.0) cmin = std::min(cmin, std::max(K[i], 0.0) / rhs[i]);
  if (!std::isfinite(cmin)) return fit;
  fit.c = 0.5 * cmin;
  double C0 = 0.0;
  for (std::size_t i = 0; i < K.size(); ++i) C0 = std::max(C0, fit.c * rhs[i] - K[i]);
  fit.C0 = std::max(C0, 1e-12 * (1.0 + *std::max_element(K.begin(), K.end())));
  return fit;
}

}  // namespace fsi
