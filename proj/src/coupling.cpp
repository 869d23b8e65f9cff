#include "fsi/coupling.hpp"

#include <algorithm>
#include <cmath>

namespace fsi {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// shell mode values at the surface columns (columns x modes)
MatrixXd shell_values(const Discretization& d) {
  const int C = d.volume().columns(), m = d.shell().size();
  MatrixXd Y(C, m);
  for (int k = 0; k < m; ++k)
    for (int c = 0; c < C; ++c) Y(c, k) = d.shell_jets(k)[c].v;
  return Y;
}

ReferenceVelocity zero_velocity(const Discretization& d) {
  ReferenceVelocity v;
  v.g = TrigPoly<double>(0, 0, d.cylinder().L);
  return v;
}

}  // namespace

void PicardConfig::validate() const {
  if (!(tol > 0.0)) throw ValidationError("picard tolerance must be positive");
  if (max_iters < 1) throw ValidationError("picard max_iters must be >= 1");
  if (!(relax > 0.0 && relax <= 1.0)) throw ValidationError("picard relaxation must lie in (0, 1]");
  if (!(eps > 0.0)) throw ValidationError("mollifier eps must be positive");
}

std::string to_string(PicardStatus s) {
  switch (s) {
    case PicardStatus::Converged:
      return "converged";
    case PicardStatus::NonConvergence:
      return "non_convergence";
    case PicardStatus::ContactStop:
      return "contact_stop";
  }
  return "unknown";
}

MollifiedMotion mollify_motion(const Discretization& d, const MatrixXd& raw, double dt, double eps) {
  const Mollifier mol(eps);
  const MatrixXd S = (shell_values(d) * raw).transpose();
  const double width = mol.search_width(S, dt);
  MollifiedMotion m;
  m.width = width;
  m.deviation = (Mollifier::convolve(S, dt, width) - S).cwiseAbs().maxCoeff();
  const MatrixXd c = Mollifier::convolve(raw.transpose(), dt, width);
  m.coeffs = c.transpose();
  m.rates = Mollifier::time_derivative(c, dt).transpose();
  m.offset = 0.5 * eps;
  return m;
}

DecoupledResult decoupled_solve(const Discretization& d, const Physics& ph, const ProblemData& data,
                                const MatrixXd& delta_raw, const std::vector<ReferenceVelocity>& v, double eps) {
  DecoupledResult r;
  r.motion = mollify_motion(d, delta_raw, data.dt, eps);
  const SampledMotion mot = r.motion.motion(d, data.dt);
  SolveInputs in;
  in.motion = &mot;
  in.v_mid = &v;
  in.P_in = data.P_in;
  in.P_out = data.P_out;
  in.init = data.init;
  in.dt = data.dt;
  in.T = (delta_raw.cols() - 1) * data.dt;
  r.traj = galerkin_solve(d, ph, in);
  return r;
}

double shell_sup_distance(const Discretization& d, const MatrixXd& a, const MatrixXd& b) {
  const Eigen::Index n = std::min(a.cols(), b.cols());
  if (n == 0) return 0.0;
  return (shell_values(d) * (a.leftCols(n) - b.leftCols(n))).cwiseAbs().maxCoeff();
}

double velocity_l2_distance(const Discretization& d, const std::vector<ReferenceVelocity>& a,
                            const std::vector<ReferenceVelocity>& b, double dt) {
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<double> t(n);
  for (std::size_t j = 0; j < n; ++j) t[j] = dt * reference_norm2(d, a[j] + (-1.0) * b[j]);
  return std::sqrt(pairwise_sum(t));
}

PicardResult picard_fixed_point(const Discretization& d, const Physics& ph, const ProblemData& data,
                                const PicardConfig& cfg) {
  cfg.validate();
  if (!(data.dt > 0.0) || !(data.T > 0.0)) throw ValidationError("dt and T must be positive");
  const int steps = static_cast<int>(std::llround(data.T / data.dt));
  const int m = d.shell().size();
  VectorXd eta0 = VectorXd::Zero(m);
  for (int k = 0; k < std::min<int>(m, static_cast<int>(data.init.eta0.size())); ++k) eta0(k) = data.init.eta0(k);

  PicardResult res;
  MatrixXd delta = eta0.replicate(1, steps + 1);
  std::vector<ReferenceVelocity> v(steps, zero_velocity(d));
  bool contact = false, converged = false;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    DecoupledResult sol = decoupled_solve(d, ph, data, delta, v, cfg.eps);
    const Trajectory& tr = sol.traj;
    IterationLog log;
    log.iter = it;
    log.steps = tr.steps();
    log.width = sol.motion.width;
    log.sup_E = tr.sup_E;
    log.max_residual = tr.max_residual;
    log.min_radius = d.cylinder().R;
    for (const auto& row : tr.ledger) log.min_radius = std::min(log.min_radius, row.min_radius);
    if (tr.contact) {
      contact = true;
      log.contact = true;
      log.t_star = tr.t_star;
      res.t_star = tr.t_star;
      const int h = tr.steps();
      delta.conservativeResize(Eigen::NoChange, h + 1);
      v.resize(h);
    }
    res.iterations = it;
    if (tr.steps() == 0) {
      res.log.push_back(log);
      res.solution = std::move(sol);
      break;
    }
    const MatrixXd dd = cfg.relax * (tr.eta - delta);
    std::vector<ReferenceVelocity> dv(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) dv[j] = cfg.relax * (tr.v_mid[j] + (-1.0) * v[j]);
    log.d_delta = shell_sup_distance(d, dd, MatrixXd::Zero(dd.rows(), dd.cols()));
    std::vector<ReferenceVelocity> zeros(v.size(), zero_velocity(d));
    log.d_v = velocity_l2_distance(d, dv, zeros, data.dt);
    log.update = log.d_delta + log.d_v;
    delta += dd;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] + dv[j];
    res.log.push_back(log);
    if (log.update <= cfg.tol) {
      converged = true;
      break;
    }
  }
  res.delta = delta;
  res.v = v;
  res.horizon = (delta.cols() - 1) * data.dt;
  if (delta.cols() > 1) {
    res.solution = decoupled_solve(d, ph, data, delta, v, cfg.eps);
    for (auto& row : res.solution.traj.ledger) row.picard_iter = res.iterations;
    const Trajectory& tr = res.solution.traj;
    res.self_consistency = shell_sup_distance(d, tr.eta, delta) + velocity_l2_distance(d, tr.v_mid, v, data.dt);
    if (tr.contact) {
      contact = true;
      res.t_star = tr.t_star;
    }
  }
  if (contact)
    res.status = PicardStatus::ContactStop;
  else
    res.status = converged ? PicardStatus::Converged : PicardStatus::NonConvergence;
  return res;
}

bool CauchyTable::decreasing() const {
  for (const auto* s : {&d_u, &d_eta_t, &d_hess})
    for (std::size_t k = 1; k < s->size(); ++k)
      if (!((*s)[k] < (*s)[k - 1])) return false;
  return true;
}

namespace {

// u chi at fixed Eulerian sample points, d_t eta and grad^2 eta at fixed shell points.
struct LevelSamples {
  std::vector<std::vector<Vec3>> u;              // time x points
  std::vector<std::vector<double>> eta_t;        // time x shell points
  std::vector<std::vector<Eigen::Vector3d>> hess;
};

LevelSamples level_samples(const LevelRun& run, double dt, int stride, int steps, const CylGrid& eul,
                           const CylGrid& shellg) {
  const Discretization& d = *run.disc;
  const Cylinder& cyl = d.cylinder();
  const Trajectory& tr = run.result.solution.traj;
  const SampledMotion mot = run.result.solution.motion.motion(d, dt);
  LevelSamples s;
  const TrigPolyTable stab(shellg.theta, shellg.z, cyl.L, d.shell().kmax(), d.shell().pmax());
  for (int j = 0; j < steps; j += stride) {
    const double tm = (j + 0.5) * dt;
    const VectorXd am = shell_coefficients(d, 0.5 * (tr.a[j] + tr.a[j + 1]));
    const VectorXd cm = shell_coefficients(d, tr.c_mid[j]);
    const auto ej = d.shell().field(am).eval_grid(stab);
    const auto vj = d.shell().field(cm).eval_grid(stab);
    std::vector<double> et(ej.size());
    std::vector<Eigen::Vector3d> hs(ej.size());
    for (std::size_t c = 0; c < ej.size(); ++c) {
      et[c] = vj[c].v;
      hs[c] = Eigen::Vector3d(ej[c].tt, std::sqrt(2.0) * ej[c].tz, ej[c].zz);
    }
    s.eta_t.push_back(std::move(et));
    s.hess.push_back(std::move(hs));
    // velocity
    const TrigPoly<double> delta = mot.at(tm).value_part();
    const auto dp = delta.eval_grid(TrigPolyTable(eul.theta, eul.z, cyl.L, delta.kmax(), delta.pmax()));
    const ReferenceVelocity& rv = tr.v_mid[j];
    const FluxPolys<double> fp(rv.g);
    const auto fc = flux_columns(fp, TrigPolyTable(eul.theta, eul.z, cyl.L, fp.kmax(), fp.pmax()));
    std::vector<Vec3> u(eul.size(), Vec3::Zero());
    for (int iz = 0; iz < eul.nz(); ++iz)
      for (int it = 0; it < eul.nt(); ++it) {
        const int c = eul.column(it, iz);
        for (int ir = 0; ir < eul.nr(); ++ir) {
          const double rx = eul.r[ir];
          if (rx >= cyl.R + dp[c].v) continue;
          const double r = invert_radius(cyl, dp[c].v, rx);
          Vec3 phi = flux_lift_jet(cyl.slip_profile(r), r, fc[c]).v;
          const auto z = d.fluid().eval(r, eul.theta[it], eul.z[iz]);
          for (int k = 0; k < rv.b.size(); ++k) phi += rv.b(k) * z[k].v;
          const MapJet<double> mj = map_jet(r, radial_jet(cyl.rho(r), dp[c]));
          u[eul.node(ir, it, iz)] = mj.F * phi / mj.detF;
        }
      }
    s.u.push_back(std::move(u));
  }
  return s;
}

}  // namespace

CauchyTable convergence_diagnostics(const std::vector<LevelRun>& runs, double dt, int time_stride) {
  CauchyTable tab;
  if (runs.empty()) return tab;
  const Cylinder& cyl = runs.front().disc->cylinder();
  int steps = runs.front().result.solution.traj.steps();
  for (const auto& r : runs) steps = std::min(steps, r.result.solution.traj.steps());
  const CylGrid eul = volume_grid(cyl.R + cyl.M, cyl.L, 12, 16, 16);
  const CylGrid shellg = surface_grid(cyl.R, cyl.L, 24, 24);
  std::vector<LevelSamples> s;
  for (const auto& r : runs) {
    tab.labels.push_back(r.label);
    s.push_back(level_samples(r, dt, time_stride, steps, eul, shellg));
  }
  const double w_t = dt * time_stride;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    std::vector<double> tu, te, th;
    for (std::size_t j = 0; j < s[k].u.size(); ++j) {
      for (int iz = 0; iz < eul.nz(); ++iz)
        for (int it = 0; it < eul.nt(); ++it)
          for (int ir = 0; ir < eul.nr(); ++ir) {
            const int i = eul.node(ir, it, iz);
            tu.push_back(w_t * eul.ref_weight(ir, it, iz) * (s[k].u[j][i] - s[k + 1].u[j][i]).squaredNorm());
          }
      for (int iz = 0; iz < shellg.nz(); ++iz)
        for (int it = 0; it < shellg.nt(); ++it) {
          const int c = shellg.column(it, iz);
          const double w = w_t * shellg.surf_weight(iz);
          const double de = s[k].eta_t[j][c] - s[k + 1].eta_t[j][c];
          te.push_back(w * de * de);
          th.push_back(w * (s[k].hess[j][c] - s[k + 1].hess[j][c]).squaredNorm());
        }
    }
    tab.d_u.push_back(std::sqrt(pairwise_sum(tu)));
    tab.d_eta_t.push_back(std::sqrt(pairwise_sum(te)));
    tab.d_hess.push_back(std::sqrt(pairwise_sum(th)));
  }
  return tab;
}

}  // namespace fsi
