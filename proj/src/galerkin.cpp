#include "fsi/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace fsi {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// X^T diag(w) Y
MatrixXd wgemm(const MatrixXd& X, const VectorXd& w, const MatrixXd& Y) { return X.transpose() * (w.asDiagonal() * Y); }

struct Stiffness {
  MatrixXd K;
  VectorXd f0;
  double e0 = 0.0;
};

Stiffness shell_stiffness(const Discretization& d, const Physics& ph, const std::vector<Column>& cols,
                          const std::vector<ShellPoint<double>>& delta, const VectorXd& cw) {
  const int n = static_cast<int>(cols.size()), C = static_cast<int>(cw.size());
  Stiffness st;
  std::vector<std::vector<ShellPoint<double>>> modes(n);
  for (int k = 0; k < n; ++k)
    modes[k] = cols[k].kind == Column::Slip ? cols[k].xi_jets : std::vector<ShellPoint<double>>(C);
  if (ph.model == ShellModel::Linear) {
    MatrixXd H(3 * C, n);
    for (int k = 0; k < n; ++k)
      for (int c = 0; c < C; ++c) {
        const double s = std::sqrt(cw(c));
        H(3 * c, k) = s * modes[k][c].tt;
        H(3 * c + 1, k) = s * std::sqrt(2.0) * modes[k][c].tz;
        H(3 * c + 2, k) = s * modes[k][c].zz;
      }
    st.K = H.transpose() * H;
    st.f0 = VectorXd::Zero(n);
    return st;
  }
  const KoiterParams kp{d.cylinder().R, ph.h, ph.lambda_s, ph.mu_s, ph.metric};
  std::vector<double> w(cw.data(), cw.data() + C);
  const KoiterLinearSystem sys = koiter_lin_system(kp, w, delta, modes);
  // elastic energy K_delta(eta) / 2 and force K_delta(eta, X_k)
  st.K = sys.K;
  st.f0 = sys.f0;
  st.e0 = sys.e0;
  return st;
}

MatrixXd shell_matrix(const std::vector<Column>& cols, int C) {
  MatrixXd Y = MatrixXd::Zero(C, static_cast<int>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k)
    if (cols[k].kind == Column::Slip)
      for (int c = 0; c < C; ++c) Y(c, static_cast<int>(k)) = cols[k].xi_jets[c].v;
  return Y;
}

double elastic(const Physics& ph, const Stiffness& st, const VectorXd& a) {
  const double q = 0.5 * a.dot(st.K * a);
  if (ph.model == ShellModel::Linear) return q;
  return q + st.f0.dot(a) + 0.5 * st.e0;
}

TrigPoly<double> value_part(const TrigPoly<Dual>& x) { return x.value_part(); }

// Discrete system of one midpoint step.
struct StepSystem {
  MatrixXd Mm, Mp, L, K;
  VectorXd f0, F;
  double e0 = 0.0;
  Stiffness st;
  StepOperators ops;
};

}  // namespace

MatrixXd mass_matrix(const Physics& ph, const Samples& s) {
  MatrixXd M = wgemm(s.val[0], s.w, s.val[0]) + wgemm(s.val[1], s.w, s.val[1]) + wgemm(s.val[2], s.w, s.val[2]);
  M *= ph.rho_f;
  M += ph.rho_s * ph.h * wgemm(s.shell, s.cw, s.shell);
  return 0.5 * (M + M.transpose());
}

StepOperators assemble_operators(const Discretization& d, const Physics& ph, const Samples& s, const MatrixXd& v,
                                 double P_in, double P_out) {
  (void)d;
  if (!(ph.alpha > 0.0)) throw InvalidSlipLength("slip length alpha must be positive");
  if (!s.gradients) throw ValidationError("operator assembly needs sampled gradients");
  const int n = s.count;
  StepOperators o;
  // viscous: 2 mu int D:D
  o.A = MatrixXd::Zero(n, n);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const MatrixXd D = 0.5 * (s.grad[3 * a + b] + s.grad[3 * b + a]);
      o.A += wgemm(D, s.w, D);
    }
  o.A *= 2.0 * ph.mu_f;
  o.A = 0.5 * (o.A + o.A.transpose());
  // convective: T_kj = int X_k . (v.grad) X_j, B = (T - T^T) / 2
  o.B = MatrixXd::Zero(n, n);
  if (v.size() > 0) {
    MatrixXd T = MatrixXd::Zero(n, n);
    for (int a = 0; a < 3; ++a) {
      MatrixXd P = MatrixXd::Zero(s.nodes, n);
      for (int b = 0; b < 3; ++b) P += v.row(b).transpose().asDiagonal() * s.grad[3 * a + b];
      T += wgemm(s.val[a], s.w, P);
    }
    o.B = 0.5 * (T - T.transpose());
  }
  // rate term, antisymmetric part
  MatrixXd Q = MatrixXd::Zero(n, n), U = MatrixXd::Zero(n, n);
  const VectorXd wW = s.w.cwiseProduct(s.Wr);
  for (int a = 0; a < 3; ++a) {
    Q += wgemm(s.val[a], s.w, s.rate[a]);
    U += wgemm(s.val[a], wW, s.grad[3 * a]);
  }
  o.Ca = ph.rho_f * 0.5 * ((Q - Q.transpose()) + (U.transpose() - U));
  // slip
  MatrixXd Tr0 = s.tr[0] - s.shell;
  o.S = (wgemm(Tr0, s.sw, Tr0) + wgemm(s.tr[1], s.sw, s.tr[1]) + wgemm(s.tr[2], s.sw, s.tr[2])) / ph.alpha;
  o.S = 0.5 * (o.S + o.S.transpose());
  o.F = -ph.inflow_normal_sign * P_in * s.flux_in - P_out * s.flux_out;
  return o;
}

double Trajectory::energy_constant() const {
  const double num = sup_E + dissipation, den = E0 + pressure_norm2;
  if (num == 0.0) return 0.0;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

VectorXd shell_coefficients(const Discretization& d, const VectorXd& a) {
  VectorXd out = VectorXd::Zero(d.shell().size());
  for (int j = 0; 2 * j < a.size(); ++j) out(j) = a(2 * j);
  return out;
}

namespace {

StepSystem build_step(const Discretization& d, const Physics& ph, const SolveInputs& in, const std::vector<Column>& cols,
                      const MatrixXd& Mm, int step, Samples* endpoint) {
  const double dt = in.dt, tm = (step + 0.5) * dt, tp = (step + 1) * dt;
  const TrigPoly<Dual> dm = in.motion->at(tm);
  Samples sp = sample_columns(d, cols, in.motion->at(tp), false);
  Samples sm = sample_columns(d, cols, dm, true);
  MatrixXd v;
  if (in.v_mid && step < static_cast<int>(in.v_mid->size()) && !(*in.v_mid)[step].zero())
    v = velocity_values(d, (*in.v_mid)[step], value_part(dm));
  StepSystem sys;
  sys.ops = assemble_operators(d, ph, sm, v, in.P_in(tm), in.P_out(tm));
  sys.st = shell_stiffness(d, ph, cols, sm.delta, sm.cw);
  sys.Mm = Mm;
  sys.Mp = mass_matrix(ph, sp);
  sys.L = (sys.Mp - sys.Mm) / (2.0 * dt) + sys.ops.Ca + sys.ops.B + sys.ops.A + sys.ops.S;
  sys.K = sys.st.K;
  sys.f0 = sys.st.f0;
  sys.e0 = sys.st.e0;
  sys.F = sys.ops.F;
  if (endpoint) *endpoint = std::move(sp);
  return sys;
}

double margin_gap(const Cylinder& cyl, const VectorXd& eta, double* sup, double* minrad) {
  *sup = eta.size() ? eta.cwiseAbs().maxCoeff() : 0.0;
  *minrad = cyl.R + (eta.size() ? eta.minCoeff() : 0.0);
  return std::min(*minrad - cyl.margin, cyl.M - *sup);
}

}  // namespace

Trajectory galerkin_solve(const Discretization& d, const Physics& ph, const SolveInputs& in) {
  if (!in.motion) throw ValidationError("galerkin_solve needs a prescribed motion");
  if (!(in.dt > 0.0) || !(in.T > 0.0)) throw ValidationError("dt and T must be positive");
  if (!(ph.alpha > 0.0)) throw InvalidSlipLength("slip length alpha must be positive");
  const Cylinder& cyl = d.cylinder();
  const auto cols = interleaved_columns(d, d.n());
  const int n = d.n(), steps = static_cast<int>(std::llround(in.T / in.dt));
  const double dt = in.dt;
  Trajectory tr;
  tr.dt = dt;

  Samples s0 = sample_columns(d, cols, in.motion->at(0.0), false);
  const MatrixXd Y = shell_matrix(cols, s0.columns);
  MatrixXd M = mass_matrix(ph, s0);

  // initial projection
  VectorXd a = VectorXd::Zero(n), c = VectorXd::Zero(n), rhs = VectorXd::Zero(n);
  tr.projection_residual = VectorXd::Zero(2);
  const VectorXd eta0 = in.init.eta0.size() ? in.init.eta0 : VectorXd::Zero(0);
  const VectorXd eta1 = in.init.eta1.size() ? in.init.eta1 : VectorXd::Zero(0);
  double tail0 = 0.0;
  for (int j = 0; j < eta0.size(); ++j) {
    if (2 * j < n) a(2 * j) = eta0(j);
    else tail0 += eta0(j) * eta0(j);
  }
  for (int j = 0; j < eta1.size() && 2 * j < n; ++j) rhs(2 * j) = ph.rho_s * ph.h * eta1(j);
  if (eta1.size()) {
    c = M.ldlt().solve(rhs);
    const VectorXd sc = shell_coefficients(d, c);
    VectorXd e1 = VectorXd::Zero(sc.size());
    e1.head(std::min<Eigen::Index>(eta1.size(), e1.size())) = eta1.head(std::min<Eigen::Index>(eta1.size(), e1.size()));
    tr.projection_residual(1) = (sc - e1).norm();
  }
  tr.projection_residual(0) = std::sqrt(tail0);

  Stiffness st0 = shell_stiffness(d, ph, cols, s0.delta, s0.cw);
  auto push_row = [&](double t, double E, double D, double Es, double W, double res, const MatrixXd& Mt, double cond,
                      const VectorXd& av) {
    LedgerRow r;
    r.t = t;
    r.E = E;
    r.D = D;
    r.E_slip = Es;
    r.work = W;
    r.residual = res;
    r.min_eig_M = Eigen::SelfAdjointEigenSolver<MatrixXd>(Mt, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    const VectorXd eta = Y * av;
    margin_gap(cyl, eta, &r.sup_eta, &r.min_radius);
    r.cond = cond;
    tr.ledger.push_back(r);
  };

  tr.t.push_back(0.0);
  tr.a.push_back(a);
  tr.c.push_back(c);
  const double E0 = 0.5 * c.dot(M * c) + elastic(ph, st0, a);
  tr.E0 = E0;
  tr.sup_E = E0;
  tr.max_E = E0;
  push_row(0.0, E0, 0.0, 0.0, 0.0, 0.0, M, 1.0, a);
  {
    double sup = 0.0, mr = 0.0;
    if (margin_gap(cyl, Y * a, &sup, &mr) < 0.0) {
      tr.contact = true;
      tr.t_star = 0.0;
      tr.contact_reason = "initial displacement violates the contact margin";
    }
  }

  for (int j = 0; j < steps && !tr.contact; ++j) {
    const double tm = (j + 0.5) * dt, tp = (j + 1) * dt;
    StepSystem sys;
    try {
      sys = build_step(d, ph, in, cols, M, j, nullptr);
    } catch (const ContactViolation& e) {
      tr.contact = true;
      tr.t_star = j * dt;
      tr.contact_reason = std::string("prescribed motion: ") + e.what();
      break;
    } catch (const DegenerateMap& e) {
      tr.contact = true;
      tr.t_star = j * dt;
      tr.contact_reason = std::string("prescribed motion: ") + e.what();
      break;
    }
    const MatrixXd Mbar = 0.5 * (sys.Mm + sys.Mp);
    const MatrixXd lhs = Mbar / dt + 0.5 * sys.L + 0.25 * dt * sys.K;
    const VectorXd r = (Mbar / dt - 0.5 * sys.L - 0.25 * dt * sys.K) * c - sys.K * a - sys.f0 + sys.F;
    const Eigen::PartialPivLU<MatrixXd> lu(lhs);
    const double rc = lu.rcond();
    if (!(rc > 1e-14)) throw SingularSystem("step matrix is numerically singular at t=" + std::to_string(tm));
    const VectorXd cp = lu.solve(r);
    const VectorXd cm = 0.5 * (cp + c);
    const VectorXd ap = a + dt * cm;

    double sup = 0.0, mr = 0.0, sup0 = 0.0, mr0 = 0.0;
    const double g1 = margin_gap(cyl, Y * ap, &sup, &mr);
    if (g1 < 0.0) {
      const double g0 = margin_gap(cyl, Y * a, &sup0, &mr0);
      tr.contact = true;
      tr.t_star = j * dt + dt * g0 / (g0 - g1);
      tr.contact_reason = mr - cyl.margin < cyl.M - sup ? "min(R + eta) below margin" : "sup |eta| above M";
      break;
    }
    const double Em = 0.5 * c.dot(sys.Mm * c) + elastic(ph, sys.st, a);
    const double Ep = 0.5 * cp.dot(sys.Mp * cp) + elastic(ph, sys.st, ap);
    const double D = cm.dot(sys.ops.A * cm), Es = cm.dot(sys.ops.S * cm), W = sys.F.dot(cm);
    const double res = std::abs((Ep - Em) / dt + D + Es - W);
    a = ap;
    c = cp;
    M = sys.Mp;
    tr.t.push_back(tp);
    tr.a.push_back(a);
    tr.c.push_back(c);
    tr.c_mid.push_back(cm);
    tr.v_mid.push_back(reference_velocity(d, cols, cm, value_part(in.motion->at(tm))));
    push_row(tp, Ep, D, Es, W, res, M, 1.0 / rc, a);
    tr.sup_E = std::max(tr.sup_E, Ep);
    tr.max_E = std::max(tr.max_E, Ep);
    tr.max_residual = std::max(tr.max_residual, res);
    tr.dissipation += dt * (D + Es);
    const double pi = in.P_in(tm), po = in.P_out(tm);
    tr.pressure_norm2 += dt * (pi * pi + po * po);
  }
  tr.eta = MatrixXd(d.shell().size(), static_cast<int>(tr.a.size()));
  for (std::size_t k = 0; k < tr.a.size(); ++k) tr.eta.col(static_cast<int>(k)) = shell_coefficients(d, tr.a[k]);
  return tr;
}

std::vector<double> weak_residual(const Discretization& d, const Physics& ph, const SolveInputs& in,
                                  const Trajectory& traj, const std::vector<Column>& tests) {
  auto cols = interleaved_columns(d, d.n());
  const int n = d.n(), m = static_cast<int>(tests.size());
  for (const auto& t : tests) cols.push_back(t);
  std::vector<double> out(m, 0.0);
  Samples s0 = sample_columns(d, cols, in.motion->at(0.0), false);
  MatrixXd M = mass_matrix(ph, s0);
  for (int j = 0; j < traj.steps(); ++j) {
    const StepSystem sys = build_step(d, ph, in, cols, M, j, nullptr);
    VectorXd cm = VectorXd::Zero(n + m), cp = cm, am = cm;
    cm.head(n) = traj.c[j];
    cp.head(n) = traj.c[j + 1];
    am.head(n) = traj.a[j];
    const VectorXd cmid = 0.5 * (cm + cp), amid = am + 0.5 * in.dt * cmid;
    const MatrixXd Mbar = 0.5 * (sys.Mm + sys.Mp);
    const VectorXd row = Mbar * (cp - cm) / in.dt + sys.L * cmid + sys.K * amid + sys.f0 - sys.F;
    for (int q = 0; q < m; ++q) out[q] += in.dt * std::abs(row(n + q));
    M = sys.Mp;
  }
  return out;
}

}  // namespace fsi
