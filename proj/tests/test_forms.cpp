#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "fsi/fluid_basis.hpp"
#include "fsi/forms.hpp"
#include "fsi/shell_basis.hpp"

using namespace fsi;

namespace {

// Cartesian field x -> (value, Jacobian)
using CartField = std::function<std::pair<Vec3, Mat3>(const Vec3&)>;

VolumeField sample(const CylGrid& g, const DeformedQuadrature& q, const CartField& f) {
  VolumeField out(g.size());
  for (int iz = 0; iz < g.nz(); ++iz)
    for (int it = 0; it < g.nt(); ++it)
      for (int ir = 0; ir < g.nr(); ++ir) {
        const int i = g.node(ir, it, iz);
        const auto [v, D] = f(cartesian(q.radius[i], g.theta[it], g.z[iz]));
        const Mat3 Q = frame_rotation(g.theta[it]);
        out[i].v = Q.transpose() * v;
        out[i].grad = Q.transpose() * D * Q;
      }
  return out;
}

CartField linear_field(const Mat3& A, const Vec3& b) {
  return [A, b](const Vec3& x) { return std::make_pair(Vec3(A * x + b), A); };
}

CartField random_quadratic(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat3 A;
  Vec3 b, c;
  for (int i = 0; i < 3; ++i) {
    b(i) = u(rng);
    c(i) = u(rng);
    for (int j = 0; j < 3; ++j) A(i, j) = u(rng);
  }
  // f = A x + b + c (x . x) e_z-ish mixing
  return [A, b, c](const Vec3& x) {
    Vec3 v = A * x + b + c * x.squaredNorm();
    Mat3 D = A + 2.0 * c * x.transpose();
    return std::make_pair(v, D);
  };
}

TrigPoly<double> random_eta(std::mt19937& rng, const ShellBasis& B, double amp) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd c(B.size());
  for (int k = 0; k < B.size(); ++k) c(k) = amp * u(rng) / (1.0 + k);
  return B.field(c);
}

Mat3 rotation_generator(const Vec3& w) {
  Mat3 W;
  W << 0, -w(2), w(1), w(2), 0, -w(0), -w(1), w(0), 0;
  return W;
}

}  // namespace

TEST_CASE("symmetric gradient form: rigid rotations, positivity and a closed form") {
  const Cylinder cyl;
  const CylGrid g = volume_grid(cyl.R, cyl.L, 10, 16, 10);
  const ShellBasis B(cyl.L, 5, 4);
  std::mt19937 rng(11);
  const DeformedQuadrature q = deformed_quadrature(cyl, g, random_eta(rng, B, 0.05));
  const VolumeField rot = sample(g, q, linear_field(rotation_generator(Vec3(0.3, -1.2, 0.7)), Vec3(1, 2, 3)));
  for (int k = 0; k < 20; ++k) {
    const VolumeField u = sample(g, q, random_quadratic(rng));
    CHECK(std::abs(sym_grad_form(q, u, rot)) < 1e-12);
    CHECK(sym_grad_form(q, u, u) >= 0.0);
  }
  // delta = 0: u = (x z, 0, 0), w = (0, 0, x^2) gives D u : D w = x^2, integral pi R^4 L / 4
  const DeformedQuadrature q0 = deformed_quadrature(cyl, g, TrigPoly<double>(0, 0, cyl.L));
  const VolumeField u = sample(g, q0, [](const Vec3& x) {
    Mat3 D = Mat3::Zero();
    D(0, 0) = x(2);
    D(0, 2) = x(0);
    return std::make_pair(Vec3(x(0) * x(2), 0, 0), D);
  });
  const VolumeField w = sample(g, q0, [](const Vec3& x) {
    Mat3 D = Mat3::Zero();
    D(2, 0) = 2 * x(0);
    return std::make_pair(Vec3(0, 0, x(0) * x(0)), D);
  });
  CHECK(std::abs(sym_grad_form(q0, u, w) - M_PI * cyl.L / 4.0) < 1e-8);
}

TEST_CASE("convective form is antisymmetric and matches a closed form") {
  const Cylinder cyl;
  const CylGrid g = volume_grid(cyl.R, cyl.L, 10, 16, 10);
  const ShellBasis B(cyl.L, 5, 4);
  std::mt19937 rng(12);
  const DeformedQuadrature q = deformed_quadrature(cyl, g, random_eta(rng, B, 0.05));
  for (int k = 0; k < 10; ++k) {
    const VolumeField u = sample(g, q, random_quadratic(rng)), v = sample(g, q, random_quadratic(rng)),
                      w = sample(g, q, random_quadratic(rng));
    const double s = 1.0 + std::abs(convective_form(q, u, v, w));
    CHECK(std::abs(convective_form(q, u, w, w)) <= 1e-12 * s);
    CHECK(std::abs(convective_form(q, u, v, w) + convective_form(q, u, w, v)) <= 1e-12 * s);
  }
  // u = (x, 0, 0), v = (0, 0, x^2), w = (0, 0, 1 + y^2): b = 1/2 int 2 x^2 (1 + y^2) = 7 pi / 12 (R = 1, L = 2)
  const DeformedQuadrature q0 = deformed_quadrature(cyl, g, TrigPoly<double>(0, 0, cyl.L));
  const VolumeField u = sample(g, q0, linear_field(Eigen::Vector3d(1, 0, 0).asDiagonal(), Vec3::Zero()));
  const VolumeField v = sample(g, q0, [](const Vec3& x) {
    Mat3 D = Mat3::Zero();
    D(2, 0) = 2 * x(0);
    return std::make_pair(Vec3(0, 0, x(0) * x(0)), D);
  });
  const VolumeField w = sample(g, q0, [](const Vec3& x) {
    Mat3 D = Mat3::Zero();
    D(2, 1) = 2 * x(1);
    return std::make_pair(Vec3(0, 0, 1 + x(1) * x(1)), D);
  });
  CHECK(std::abs(convective_form(q0, u, v, w) - 7.0 * M_PI / 12.0) < 1e-8);
}

TEST_CASE("slip form: no-slip pairs, positivity and the tangential identity") {
  const Cylinder cyl;
  const CylGrid g = volume_grid(cyl.R, cyl.L, 4, 16, 12);
  const ShellBasis B(cyl.L, 5, 4);
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const DeformedQuadrature q = deformed_quadrature(cyl, g, random_eta(rng, B, 0.1));
  const int C = g.columns();
  TraceField u(C), w(C), nos(C);
  std::vector<double> et(C), xi(C);
  for (int c = 0; c < C; ++c) {
    u[c] = Vec3(U(rng), U(rng), U(rng));
    w[c] = Vec3(U(rng), U(rng), U(rng));
    et[c] = U(rng);
    xi[c] = U(rng);
    nos[c] = Vec3(xi[c], 0, 0);
  }
  CHECK(slip_form(q, u, et, nos, xi, 0.7) == 0.0);
  CHECK(slip_form(q, u, et, u, et, 0.7) >= 0.0);
  CHECK(std::abs(slip_form(q, u, et, w, xi, 0.7) - slip_form(q, w, xi, u, et, 0.7)) < 1e-13);
  CHECK_THROWS_AS(slip_form(q, u, et, w, xi, 0.0), InvalidSlipLength);
  // nodewise: with vanishing normal parts the integrand is the sum over unit tangents
  for (int c = 0; c < C; ++c) {
    const SurfaceFrame& f = q.frames[c];
    const Vec3 t1 = f.tau1.normalized();
    const Vec3 t2 = (f.tau2 - f.tau2.dot(t1) * t1).normalized();
    Vec3 s = u[c] - et[c] * Vec3::UnitX(), r = w[c] - xi[c] * Vec3::UnitX();
    s -= s.dot(f.nu) * f.nu;
    r -= r.dot(f.nu) * f.nu;
    CHECK(std::abs(s.dot(r) - (s.dot(t1) * r.dot(t1) + s.dot(t2) * r.dot(t2))) < 1e-10);
  }
}

TEST_CASE("interface transport form: zero rate, sign flip and a closed form") {
  const Cylinder cyl;
  const CylGrid g = volume_grid(cyl.R, cyl.L, 4, 16, 12);
  const ShellBasis B(cyl.L, 5, 4);
  std::mt19937 rng(14);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const DeformedQuadrature q = deformed_quadrature(cyl, g, random_eta(rng, B, 0.1));
  const int C = g.columns();
  TraceField u(C), w(C), mu(C);
  std::vector<double> rate(C), zero(C, 0.0);
  for (int c = 0; c < C; ++c) {
    u[c] = Vec3(U(rng), U(rng), U(rng));
    mu[c] = -u[c];
    w[c] = Vec3(U(rng), U(rng), U(rng));
    rate[c] = U(rng);
  }
  CHECK(interface_transport_form(q, u, w, zero) == 0.0);
  CHECK(interface_transport_form(q, mu, w, rate) == -interface_transport_form(q, u, w, rate));
  // delta = 0, u = e_r, w = z e_r, rate 1: -1/2 int z R dtheta dz = -pi R L^2 / 2
  const DeformedQuadrature q0 = deformed_quadrature(cyl, g, TrigPoly<double>(0, 0, cyl.L));
  TraceField er(C), zr(C);
  std::vector<double> one(C, 1.0);
  for (int iz = 0; iz < g.nz(); ++iz)
    for (int it = 0; it < g.nt(); ++it) {
      er[g.column(it, iz)] = Vec3::UnitX();
      zr[g.column(it, iz)] = g.z[iz] * Vec3::UnitX();
    }
  CHECK(std::abs(interface_transport_form(q0, er, zr, one) + M_PI * cyl.R * cyl.L * cyl.L / 2.0) < 1e-12);
}

TEST_CASE("forcing: Poiseuille profile and linearity") {
  const double R = 1.3;
  const CylGrid in = disk_grid(R, 0.0, 8, 8);
  std::vector<Vec3> p(in.size()), tang(in.size());
  for (int it = 0; it < in.nt(); ++it)
    for (int ir = 0; ir < in.nr(); ++ir) {
      const double r = in.r[ir];
      p[in.node(ir, it, 0)] = Vec3(0, 0, 1 - (r / R) * (r / R));
      tang[in.node(ir, it, 0)] = Vec3(r, 2.0, 0.0);
    }
  const DiskFlux f{disk_flux(in, p), 0.0};
  CHECK(std::abs(forcing(f, 1.0, 0.0) + M_PI * R * R / 2.0) < 1e-10);
  CHECK(forcing(f, 0.0, 0.0) == 0.0);
  CHECK(forcing({disk_flux(in, tang), disk_flux(in, tang)}, 1.0, 2.0) == 0.0);
  const DiskFlux g{0.3, -0.8};
  CHECK(std::abs(forcing(g, 2.0, 3.0) - (2.0 * forcing(g, 1.0, 0.0) + 3.0 * forcing(g, 0.0, 1.0))) < 1e-15);
  CHECK(forcing(f, 1.0, 0.0, -1.0) == -forcing(f, 1.0, 0.0, 1.0));
}

TEST_CASE("pressure profiles parse, interpolate and reject malformed specs") {
  const PressureProfile c = PressureProfile::parse("constant(2.5)");
  CHECK(c(0.3) == 2.5);
  const PressureProfile p = PressureProfile::parse("pulse(0.1, 0.2, 3)");
  CHECK(p(0.0) == 0.0);
  CHECK(std::abs(p(0.2) - 3.0) < 1e-14);
  CHECK(p(0.5) == 0.0);
  const PressureProfile s = PressureProfile::samples({0.0, 1.0, 2.0}, {0.0, 1.0, 4.0});
  CHECK(s(1.0) == 1.0);
  CHECK(s(0.5) > 0.0);
  CHECK_THROWS(PressureProfile::parse("wave(1)"));
  CHECK_THROWS(PressureProfile::parse("pulse(1, 2)"));
}

TEST_CASE("trace evaluation of constant fields and fluid modes") {
  const Cylinder cyl;
  const CylGrid g = volume_grid(cyl.R, cyl.L, 4, 12, 8);
  const Vec3 cvec(0.3, -0.2, 1.1);
  const TraceField t = trace_eval(cyl, g, TrigPoly<double>(0, 0, cyl.L),
                                  [&](double, double th, double) { return Vec3(frame_rotation(th).transpose() * cvec); });
  for (int iz = 0; iz < g.nz(); ++iz)
    for (int it = 0; it < g.nt(); ++it)
      CHECK((frame_rotation(g.theta[it]) * t[g.column(it, iz)] - cvec).norm() < 1e-14);
  FluidBasisOptions o;
  o.modes = 4;
  o.quad_r = 16;
  o.quad_theta = 12;
  o.quad_z = 20;
  const FluidBasis fb(cyl, o);
  for (int k = 0; k < fb.size(); ++k) {
    const TraceField z = trace_eval(cyl, g, TrigPoly<double>(0, 0, cyl.L),
                                    [&](double r, double th, double zz) { return fb.eval(r, th, zz)[k].v; });
    for (const auto& x : z) CHECK(std::abs(x(0)) <= 1e-8);
  }
}

TEST_CASE("energy report: zero state, pure shell state and slip consistency") {
  const Cylinder cyl;
  const CylGrid g = volume_grid(cyl.R, cyl.L, 8, 12, 10);
  const CylGrid s = surface_grid(cyl.R, cyl.L, 12, 10);
  const ShellBasis B(cyl.L, 5, 4);
  Physics ph;
  ph.alpha = 0.4;
  const TrigPoly<double> zero(0, 0, cyl.L);
  const DeformedQuadrature q0 = deformed_quadrature(cyl, g, zero);
  const VolumeField u0(g.size());
  const TraceField t0(g.columns(), Vec3::Zero());
  const std::vector<double> e0(g.columns(), 0.0);
  const EnergyReport z = energy_report(ph, cyl, q0, s, u0, t0, e0, zero);
  CHECK(z.E == 0.0);
  CHECK(z.D == 0.0);
  CHECK(z.E_slip == 0.0);
  const TrigPoly<double> eta = B.mode_function(2);
  const EnergyReport r = energy_report(ph, cyl, q0, s, u0, t0, e0, eta);
  CHECK(r.kinetic == 0.0);
  CHECK(r.shell_kinetic == 0.0);
  CHECK(r.E == r.elastic);
  CHECK(std::abs(r.elastic - bending_energy_linear(s, eta)) < 1e-14 * r.elastic);
  std::mt19937 rng(15);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const DeformedQuadrature q = deformed_quadrature(cyl, g, random_eta(rng, B, 0.05));
  const VolumeField u = sample(g, q, random_quadratic(rng));
  TraceField tr(g.columns());
  std::vector<double> et(g.columns());
  for (int c = 0; c < g.columns(); ++c) {
    tr[c] = Vec3(U(rng), U(rng), U(rng));
    et[c] = U(rng);
  }
  const EnergyReport e = energy_report(ph, cyl, q, s, u, tr, et, eta);
  CHECK(std::abs(e.E_slip - slip_form(q, tr, et, tr, et, ph.alpha)) <= 1e-12 * e.E_slip);
  CHECK(e.D >= 0.0);
  CHECK(e.kinetic >= 0.0);
}

TEST_CASE("Korn ratio: witnesses, homogeneity and refinement stability") {
  const Cylinder cyl;
  const ShellBasis B(cyl.L, 5, 4);
  std::mt19937 rng(16);
  const TrigPoly<double> eta = random_eta(rng, B, 0.1);
  const CylGrid g = volume_grid(cyl.R, cyl.L, 10, 16, 10);
  const DeformedQuadrature q = deformed_quadrature(cyl, g, eta);
  CHECK(korn_ratio(q, sample(g, q, linear_field(Mat3::Zero(), Vec3(1, -2, 0.5))), 2.0, 1.5) == 0.0);
  const double rot = korn_ratio(q, sample(g, q, linear_field(rotation_generator(Vec3(0, 0, 1)), Vec3::Zero())), 2.0, 1.5);
  CHECK(std::isfinite(rot));
  CHECK(rot > 0.0);
  CHECK_THROWS_AS(korn_ratio(q, VolumeField(g.size()), 2.0, 1.5), ZeroDenominator);
  const CartField f = random_quadratic(rng);
  VolumeField a = sample(g, q, f), b = a;
  for (auto& x : b) {
    x.v *= 37.5;
    x.grad *= 37.5;
  }
  CHECK(std::abs(korn_ratio(q, a, 2.0, 1.5) - korn_ratio(q, b, 2.0, 1.5)) < 1e-13 * korn_ratio(q, a, 2.0, 1.5));
  const CylGrid g2 = volume_grid(cyl.R, cyl.L, 20, 32, 20);
  const DeformedQuadrature q2 = deformed_quadrature(cyl, g2, eta);
  const double r1 = korn_ratio(q, a, 2.0, 1.5), r2 = korn_ratio(q2, sample(g2, q2, f), 2.0, 1.5);
  CHECK(std::abs(r1 - r2) < 0.1 * r2);
}
