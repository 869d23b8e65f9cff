#include <cmath>
#include <random>

#include "doctest.h"
#include "fsi/galerkin.hpp"

using namespace fsi;

namespace {

DiscretizationOptions small_options(int n) {
  DiscretizationOptions o;
  o.n = n;
  o.nr = 8;
  o.nt = 12;
  o.nz = 10;
  o.disk_nr = 10;
  o.fluid.quad_r = 16;
  o.fluid.quad_theta = 12;
  o.fluid.quad_z = 20;
  return o;
}

// delta(t) = s(t) * (Y_0 + 0.5 Y_2), s(t) = amp sin(omega t)
FunctionMotion moving(const Discretization& d, double amp, double omega) {
  TrigPoly<double> base = d.shell().mode_function(0);
  TrigPoly<double> b2 = d.shell().mode_function(2);
  b2 *= 0.5;
  base += b2;
  return FunctionMotion([base, amp, omega](double t) {
    TrigPoly<double> v = base, r = base;
    v *= amp * std::sin(omega * t);
    r *= amp * omega * std::cos(omega * t);
    return make_dual(v, r);
  });
}

}  // namespace

TEST_CASE("mass matrix is symmetric positive definite on a moving domain") {
  const Cylinder cyl;
  const Discretization d(cyl, small_options(8));
  const auto cols = interleaved_columns(d, 8);
  const FunctionMotion mot = moving(d, 0.3, 7.0);
  Physics ph;
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    const Samples s = sample_columns(d, cols, mot.at(u(rng)), false);
    const Eigen::MatrixXd M = mass_matrix(ph, s);
    CHECK((M - M.transpose()).norm() == 0.0);
    CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(M).eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("interleaved basis satisfies the coupling identity and is divergence-free") {
  const Cylinder cyl;
  const Discretization d(cyl, small_options(8));
  const auto cols = interleaved_columns(d, 8);
  const FunctionMotion mot = moving(d, 0.3, 7.0);
  for (double t : {0.0, 0.1, 0.2}) {
    const Samples s = sample_columns(d, cols, mot.at(t), true);
    for (int k = 0; k < s.count; ++k) {
      double div = 0.0, gmax = 0.0;
      for (int i = 0; i < s.nodes; ++i) {
        div = std::max(div, std::abs(s.grad[0](i, k) + s.grad[4](i, k) + s.grad[8](i, k)));
        gmax = std::max(gmax, std::abs(s.grad[0](i, k)) + std::abs(s.grad[4](i, k)) + std::abs(s.grad[8](i, k)));
      }
      CHECK(div <= 1e-12 * (1.0 + gmax));
      for (int c = 0; c < s.columns; ++c) {
        const SurfaceFrame f = surface_frame(cyl.R, s.delta[c]);
        const Vec3 tr(s.tr[0](c, k), s.tr[1](c, k), s.tr[2](c, k));
        CHECK(std::abs(tr.dot(f.nu) - s.shell(c, k) * f.nu(0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("assembled operators agree with the form-level integrals") {
  const Cylinder cyl;
  const Discretization d(cyl, small_options(6));
  const auto cols = interleaved_columns(d, 6);
  const FunctionMotion mot = moving(d, 0.3, 7.0);
  Physics ph;
  ph.alpha = 0.7;
  ph.mu_f = 0.3;
  const Samples s = sample_columns(d, cols, mot.at(0.13), true);
  // linearization velocity: the image of a reference field
  ReferenceVelocity rv = reference_velocity(d, cols, Eigen::VectorXd::LinSpaced(6, 0.5, -0.4), d.shell().mode_function(1));
  const TrigPoly<double> delta = mot.at(0.13).value_part();
  const Eigen::MatrixXd v = velocity_values(d, rv, delta);
  const StepOperators o = assemble_operators(d, ph, s, v, 1.3, -0.4);
  const DeformedQuadrature q = deformed_quadrature(cyl, d.volume(), delta);
  VolumeField vf(s.nodes);
  for (int i = 0; i < s.nodes; ++i) vf[i].v = v.col(i);
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k) {
      const auto X = column_field(s, j), Z = column_field(s, k);
      const double A = 2.0 * ph.mu_f * sym_grad_form(q, X, Z);
      CHECK(std::abs(o.A(k, j) - A) < 1e-10 * (1.0 + std::abs(A)));
      const double B = convective_form(q, vf, X, Z);
      CHECK(std::abs(o.B(k, j) - B) < 1e-10 * (1.0 + std::abs(B)));
      const double S = slip_form(q, column_trace(s, j), column_shell(s, j), column_trace(s, k), column_shell(s, k), ph.alpha);
      CHECK(std::abs(o.S(k, j) - S) < 1e-10 * (1.0 + std::abs(S)));
    }
  for (int k = 0; k < 6; ++k) {
    const double F = forcing({s.flux_in(k), s.flux_out(k)}, 1.3, -0.4);
    CHECK(std::abs(o.F(k) - F) < 1e-14);
  }
}

TEST_CASE("slip-lift disk flux matches quadrature of the lifted field") {
  const Cylinder cyl;
  const Discretization d(cyl, small_options(4));
  const TrigPoly<double> xi = d.shell().mode_function(0);
  const auto cols = std::vector<Column>{slip_column(d, xi)};
  TrigPoly<double> delta = d.shell().mode_function(2);
  delta *= 0.2;
  delta(0, 0) += 0.01;
  const Samples s = sample_columns(d, cols, make_dual(delta, TrigPoly<double>(0, 0, cyl.L)), false);
  // direct quadrature at z = L of the reference lift (Piola preserves disk flux)
  const FluxPolys<double> fp(lateral_flux(cyl.R, delta, xi));
  const CylGrid disk = disk_grid(cyl.R, cyl.L, 600, 16);
  std::vector<Vec3> vals(disk.size());
  for (int it = 0; it < disk.nt(); ++it)
    for (int ir = 0; ir < disk.nr(); ++ir)
      vals[disk.node(ir, it, 0)] =
          flux_lift_jet(cyl.slip_profile(disk.r[ir]), disk.r[ir], flux_column_at(fp, disk.theta[it], cyl.L)).v;
  CHECK(std::abs(s.flux_out(0) - disk_flux(disk, vals)) < 1e-7 * std::abs(s.flux_out(0)));
  CHECK(std::abs(s.flux_out(0)) > 1e-3);
  CHECK(s.flux_in(0) == 0.0);
}

TEST_CASE("zero data gives the zero trajectory") {
  const Cylinder cyl;
  const Discretization d(cyl, small_options(4));
  const StaticMotion mot(TrigPoly<double>(0, 0, cyl.L));
  SolveInputs in;
  in.motion = &mot;
  in.dt = 0.01;
  in.T = 0.05;
  const Trajectory tr = galerkin_solve(d, Physics{}, in);
  CHECK(tr.steps() == 5);
  for (const auto& a : tr.a) CHECK(a.norm() == 0.0);
  for (const auto& c : tr.c) CHECK(c.norm() == 0.0);
  CHECK(tr.max_residual == 0.0);
  CHECK(tr.energy_constant() == 0.0);
}

TEST_CASE("undamped two-mode system matches the exact oscillator at second order") {
  const Cylinder cyl;
  const Discretization d(cyl, small_options(2));
  const StaticMotion mot(TrigPoly<double>(0, 0, cyl.L));
  Physics ph;
  ph.mu_f = 0.0;
  ph.alpha = 1e300;
  const auto cols = interleaved_columns(d, 2);
  const Samples s = sample_columns(d, cols, mot.at(0.0), false);
  const Eigen::MatrixXd M = mass_matrix(ph, s);
  // exact: M a'' + K a = 0 with a(0) = (0.01, 0), a'(0) = 0
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(2, 2);
  K(0, 0) = bending_form_linear(d.surface(), d.shell().mode_function(0), d.shell().mode_function(0));
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(K, M);
  const Eigen::MatrixXd V = ges.eigenvectors();
  Eigen::VectorXd a0(2);
  a0 << 0.01, 0.0;
  const double T = 0.2;
  auto exact = [&](double t) {
    Eigen::VectorXd y = V.transpose() * M * a0;
    for (int i = 0; i < 2; ++i) y(i) *= std::cos(std::sqrt(std::max(ges.eigenvalues()(i), 0.0)) * t);
    return Eigen::VectorXd(V * y);
  };
  std::vector<double> err;
  for (double dt : {1e-2, 5e-3, 2.5e-3}) {
    SolveInputs in;
    in.motion = &mot;
    in.dt = dt;
    in.T = T;
    in.init.eta0 = Eigen::VectorXd::Zero(1);
    in.init.eta0(0) = 0.01;
    const Trajectory tr = galerkin_solve(d, ph, in);
    CHECK(tr.max_residual < 1e-12 * std::max(tr.max_E, 1e-300) + 1e-18);
    for (const auto& row : tr.ledger) CHECK(std::abs(row.E - tr.E0) < 1e-12 * tr.E0);
    err.push_back((tr.a.back() - exact(T)).norm());
  }
  CHECK(err[0] / err[1] > 3.5);
  CHECK(err[1] / err[2] > 3.5);
}

TEST_CASE("energy balance residual on a moving domain decays at second order") {
  const Cylinder cyl;
  const Discretization d(cyl, small_options(6));
  const FunctionMotion mot = moving(d, 0.2, 10.0);
  Physics ph;
  std::vector<double> res;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    SolveInputs in;
    in.motion = &mot;
    in.P_in = PressureProfile::pulse(0.0, 0.1, 1.0);
    in.dt = dt;
    in.T = 0.12;
    const Trajectory tr = galerkin_solve(d, ph, in);
    CHECK(!tr.contact);
    res.push_back(tr.max_residual / tr.max_E);
  }
  CHECK(res[0] / res[1] > 3.0);
  CHECK(res[1] / res[2] > 3.0);
}

TEST_CASE("weak residual vanishes for in-basis and zero test pairs") {
  const Cylinder cyl;
  const Discretization d(cyl, small_options(4));
  const FunctionMotion mot = moving(d, 0.2, 10.0);
  Physics ph;
  SolveInputs in;
  in.motion = &mot;
  in.P_in = PressureProfile::pulse(0.0, 0.05, 1.0);
  in.dt = 2e-3;
  in.T = 0.04;
  const Trajectory tr = galerkin_solve(d, ph, in);
  const auto cols = interleaved_columns(d, 4);
  std::vector<Column> tests = {cols[0], cols[1], slip_column(d, TrigPoly<double>(0, 0, cyl.L)),
                               slip_column(d, d.shell().mode_function(5))};
  const auto r = weak_residual(d, ph, in, tr, tests);
  double scale = 0.0;
  for (const auto& c : tr.c) scale = std::max(scale, c.norm());
  CHECK(r[0] < 1e-10 * (1.0 + scale));
  CHECK(r[1] < 1e-10 * (1.0 + scale));
  CHECK(r[2] == 0.0);
  CHECK(r[3] > 0.0);
}
