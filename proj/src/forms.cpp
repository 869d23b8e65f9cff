#include "fsi/forms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fsi/norms.hpp"

namespace fsi {

DeformedQuadrature deformed_quadrature(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& delta) {
  const DomainMap m = domain_map(cyl, grid, delta);
  DeformedQuadrature q;
  q.w.resize(grid.size());
  for (int iz = 0; iz < grid.nz(); ++iz)
    for (int it = 0; it < grid.nt(); ++it)
      for (int ir = 0; ir < grid.nr(); ++ir) {
        const int i = grid.node(ir, it, iz);
        q.w[i] = grid.wr[ir] * grid.wtheta * grid.wz[iz] * m.detG[i];
      }
  q.radius = m.radius;
  const TrigPolyTable tab(grid.theta, grid.z, delta.length(), delta.kmax(), delta.pmax());
  q.delta = delta.eval_grid(tab);
  q.surf_w.resize(grid.columns());
  q.col_w.resize(grid.columns());
  q.frames.resize(grid.columns());
  q.zc.resize(grid.columns());
  for (int iz = 0; iz < grid.nz(); ++iz)
    for (int it = 0; it < grid.nt(); ++it) {
      const int c = grid.column(it, iz);
      q.frames[c] = surface_frame(cyl.R, q.delta[c]);
      q.col_w[c] = grid.surf_weight(iz);
      q.surf_w[c] = q.col_w[c] * q.frames[c].J;
      q.zc[c] = grid.z[iz];
    }
  return q;
}

double sym_grad_form(const DeformedQuadrature& q, const VolumeField& u, const VolumeField& w) {
  std::vector<double> t(q.w.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    t[i] = q.w[i] * (sym_part(u[i].grad).array() * sym_part(w[i].grad).array()).sum();
  return pairwise_sum(t);
}

double convective_form(const DeformedQuadrature& q, const VolumeField& u, const VolumeField& v, const VolumeField& w) {
  std::vector<double> t(q.w.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Vec3 dv = v[i].grad * u[i].v, dw = w[i].grad * u[i].v;
    t[i] = q.w[i] * 0.5 * (dv.dot(w[i].v) - dw.dot(v[i].v));
  }
  return pairwise_sum(t);
}

double slip_form(const DeformedQuadrature& q, const TraceField& u, const std::vector<double>& eta_t, const TraceField& w,
                 const std::vector<double>& xi, double alpha) {
  if (!(alpha > 0.0)) throw InvalidSlipLength("slip length alpha must be positive");
  std::vector<double> t(q.surf_w.size());
  for (std::size_t c = 0; c < t.size(); ++c) {
    Vec3 a = u[c], b = w[c];
    a(0) -= eta_t[c];
    b(0) -= xi[c];
    t[c] = q.surf_w[c] * a.dot(b);
  }
  return pairwise_sum(t) / alpha;
}

double interface_transport_form(const DeformedQuadrature& q, const TraceField& u, const TraceField& w,
                                const std::vector<double>& dt_delta) {
  // (d_t delta e_r . nu) J = d_t delta n_r with n = tau1 x tau2
  std::vector<double> t(q.col_w.size());
  for (std::size_t c = 0; c < t.size(); ++c) t[c] = -0.5 * q.col_w[c] * u[c].dot(w[c]) * dt_delta[c] * q.frames[c].n(0);
  return pairwise_sum(t);
}

PressureProfile PressureProfile::constant(double value) {
  PressureProfile p;
  p.kind_ = Constant;
  p.a_ = value;
  std::ostringstream os;
  os.precision(17);
  os << "constant(" << value << ")";
  p.spec_ = os.str();
  return p;
}

PressureProfile PressureProfile::pulse(double t0, double width, double amplitude) {
  if (!(width > 0.0)) throw ValidationError("pulse width must be positive");
  PressureProfile p;
  p.kind_ = Pulse;
  p.t0_ = t0;
  p.w_ = width;
  p.a_ = amplitude;
  std::ostringstream os;
  os.precision(17);
  os << "pulse(" << t0 << ", " << width << ", " << amplitude << ")";
  p.spec_ = os.str();
  return p;
}

PressureProfile PressureProfile::samples(std::vector<double> t, std::vector<double> v) {
  if (t.size() < 2 || t.size() != v.size()) throw ValidationError("pressure samples need >= 2 (t, P) rows");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw ValidationError("pressure sample times must increase");
  PressureProfile p;
  p.kind_ = Samples;
  p.t_ = std::move(t);
  p.p_ = std::move(v);
  const std::size_t n = p.t_.size();
  p.m_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1, b = i + 1 == n ? i : i + 1;
    p.m_[i] = (p.p_[b] - p.p_[a]) / (p.t_[b] - p.t_[a]);
  }
  return p;
}

double PressureProfile::operator()(double t) const {
  switch (kind_) {
    case Constant:
      return a_;
    case Pulse: {
      if (t < t0_ || t > t0_ + w_) return 0.0;
      const double s = std::sin(M_PI * (t - t0_) / w_);
      return a_ * s * s;
    }
    case Samples: {
      if (t <= t_.front()) return p_.front();
      if (t >= t_.back()) return p_.back();
      const std::size_t i = static_cast<std::size_t>(std::upper_bound(t_.begin(), t_.end(), t) - t_.begin()) - 1;
      const double h = t_[i + 1] - t_[i], s = (t - t_[i]) / h, s2 = s * s, s3 = s2 * s;
      return (2 * s3 - 3 * s2 + 1) * p_[i] + (s3 - 2 * s2 + s) * h * m_[i] + (-2 * s3 + 3 * s2) * p_[i + 1] +
             (s3 - s2) * h * m_[i + 1];
    }
  }
  return 0.0;
}

PressureProfile PressureProfile::parse(const std::string& spec) {
  auto args = [&](const std::string& name) {
    const std::string body = spec.substr(name.size() + 1, spec.size() - name.size() - 2);
    std::vector<double> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(item, &used);
      } catch (const std::exception&) {
        throw ValidationError("bad number '" + item + "' in pressure profile " + spec);
      }
      out.push_back(v);
    }
    return out;
  };
  auto is_call = [&](const std::string& name) {
    return spec.rfind(name + "(", 0) == 0 && !spec.empty() && spec.back() == ')';
  };
  if (is_call("constant")) {
    const auto a = args("constant");
    if (a.size() != 1) throw ValidationError("constant(v) takes one argument");
    return constant(a[0]);
  }
  if (is_call("pulse")) {
    const auto a = args("pulse");
    if (a.size() != 3) throw ValidationError("pulse(t0, width, amplitude) takes three arguments");
    return pulse(a[0], a[1], a[2]);
  }
  if (spec.rfind("csv:", 0) == 0) {
    const std::string path = spec.substr(4);
    std::ifstream in(path);
    if (!in) throw IoError("cannot open pressure file " + path);
    std::vector<double> t, v;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      double a = 0.0, b = 0.0;
      if (!(ls >> a >> b)) throw ValidationError("bad pressure row '" + line + "' in " + path);
      t.push_back(a);
      v.push_back(b);
    }
    PressureProfile p = samples(std::move(t), std::move(v));
    p.spec_ = spec;
    return p;
  }
  throw ValidationError("unknown pressure profile '" + spec + "'");
}

double disk_flux(const CylGrid& disk, const std::vector<Vec3>& values) {
  std::vector<double> t(values.size());
  for (int it = 0; it < disk.nt(); ++it)
    for (int ir = 0; ir < disk.nr(); ++ir) {
      const int i = disk.node(ir, it, 0);
      t[i] = disk.r[ir] * disk.wr[ir] * disk.wtheta * values[i](2);
    }
  return pairwise_sum(t);
}

double forcing(const DiskFlux& f, double P_in, double P_out, double inflow_normal_sign) {
  return -inflow_normal_sign * P_in * f.in - P_out * f.out;
}

TraceField trace_eval(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& eta,
                      const std::function<Vec3(double r, double th, double z)>& phi) {
  const TrigPolyTable tab(grid.theta, grid.z, eta.length(), eta.kmax(), eta.pmax());
  const auto e = eta.eval_grid(tab);
  TraceField out(grid.columns());
  for (int iz = 0; iz < grid.nz(); ++iz)
    for (int it = 0; it < grid.nt(); ++it) {
      const int c = grid.column(it, iz);
      const MapJet<double> m = map_jet(cyl.R, radial_jet(cyl.rho(cyl.R), e[c]));
      out[c] = m.F * phi(cyl.R, grid.theta[it], grid.z[iz]) / m.detF;
    }
  return out;
}

EnergyReport energy_report(const Physics& ph, const Cylinder& cyl, const DeformedQuadrature& q, const CylGrid& surf,
                           const VolumeField& u, const TraceField& trace_u, const std::vector<double>& eta_t,
                           const TrigPoly<double>& eta) {
  EnergyReport r;
  std::vector<double> t(q.w.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = q.w[i] * u[i].v.squaredNorm();
  r.kinetic = 0.5 * ph.rho_f * pairwise_sum(t);
  std::vector<double> s(q.col_w.size());
  for (std::size_t c = 0; c < s.size(); ++c) s[c] = q.col_w[c] * eta_t[c] * eta_t[c];
  r.shell_kinetic = 0.5 * ph.rho_s * ph.h * pairwise_sum(s);
  if (ph.model == ShellModel::Linear) {
    r.elastic = bending_energy_linear(surf, eta);
  } else {
    KoiterParams kp{cyl.R, ph.h, ph.lambda_s, ph.mu_s, ph.metric};
    r.elastic = 0.5 * koiter_energy(kp, surf, eta);
  }
  r.E = r.kinetic + r.shell_kinetic + r.elastic;
  r.D = 2.0 * ph.mu_f * sym_grad_form(q, u, u);
  r.E_slip = slip_form(q, trace_u, eta_t, trace_u, eta_t, ph.alpha);
  return r;
}

double korn_ratio(const DeformedQuadrature& q, const VolumeField& f, double p, double r) {
  std::vector<double> g(f.size()), d(f.size()), v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    g[i] = f[i].grad.norm();
    d[i] = sym_part(f[i].grad).norm();
    v[i] = f[i].v.norm();
  }
  const double den = lp_norm(d, q.w, p) + lp_norm(v, q.w, p);
  if (!(den > 0.0)) throw ZeroDenominator("korn ratio of the zero field");
  return lp_norm(g, q.w, r) / den;
}

std::vector<double> boundary_distance(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& eta,
                                      int samples_theta, int samples_z) {
  std::vector<double> th(samples_theta), zs(samples_z);
  for (int i = 0; i < samples_theta; ++i) th[i] = 2.0 * M_PI * i / samples_theta;
  for (int i = 0; i < samples_z; ++i) zs[i] = cyl.L * i / (samples_z - 1);
  const TrigPolyTable tab(th, zs, cyl.L, eta.kmax(), eta.pmax());
  const auto e = eta.eval_grid(tab);
  std::vector<Vec3> wall(e.size());
  for (int iz = 0; iz < samples_z; ++iz)
    for (int it = 0; it < samples_theta; ++it) wall[iz * samples_theta + it] = cartesian(cyl.R + e[iz * samples_theta + it].v, th[it], zs[iz]);
  const TrigPolyTable gtab(grid.theta, grid.z, cyl.L, eta.kmax(), eta.pmax());
  const auto ge = eta.eval_grid(gtab);
  std::vector<double> out(grid.size());
  for (int iz = 0; iz < grid.nz(); ++iz)
    for (int it = 0; it < grid.nt(); ++it)
      for (int ir = 0; ir < grid.nr(); ++ir) {
        const double rx = grid.r[ir] + cyl.rho(grid.r[ir]).v * ge[grid.column(it, iz)].v;
        const Vec3 x = cartesian(rx, grid.theta[it], grid.z[iz]);
        double d = std::min(x(2), cyl.L - x(2));
        for (const Vec3& w : wall) d = std::min(d, (w - x).norm());
        out[grid.node(ir, it, iz)] = d;
      }
  return out;
}

double weighted_gradient_norm(const DeformedQuadrature& q, const VolumeField& f, const std::vector<double>& dist,
                              double beta, double p) {
  std::vector<double> g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) g[i] = std::pow(dist[i], 1.0 - beta) * f[i].grad.norm();
  return lp_norm(g, q.w, p);
}

}  // namespace fsi
