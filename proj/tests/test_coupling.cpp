#include <cmath>

#include "doctest.h"
#include "fsi/coupling.hpp"

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

ProblemData pulse(double amp, double dt, double T, double width = 0.05) {
  ProblemData p;
  p.P_in = PressureProfile::pulse(0.0, width, amp);
  p.P_out = PressureProfile::constant(0.0);
  p.dt = dt;
  p.T = T;
  return p;
}

}  // namespace

TEST_CASE("zero data converges in one iteration") {
  const Cylinder cyl;
  const Discretization d(cyl, small_options(4));
  PicardConfig cfg;
  const PicardResult r = picard_fixed_point(d, Physics{}, pulse(0.0, 0.01, 0.05), cfg);
  CHECK(r.status == PicardStatus::Converged);
  CHECK(r.iterations == 1);
  CHECK(r.log.front().update == 0.0);
  CHECK(r.self_consistency == 0.0);
}

TEST_CASE("small pulse converges with a monotone update sequence") {
  const Cylinder cyl;
  const Discretization d(cyl, small_options(4));
  PicardConfig cfg;
  const PicardResult r = picard_fixed_point(d, Physics{}, pulse(0.5, 5e-3, 0.08), cfg);
  CHECK(r.status == PicardStatus::Converged);
  CHECK(r.iterations <= 50);
  for (std::size_t k = 1; k < r.log.size(); ++k) CHECK(r.log[k].update <= 1.1 * r.log[k - 1].update);
  CHECK(r.self_consistency <= cfg.tol);
}

TEST_CASE("large forcing stops at contact before the wall is violated") {
  const Cylinder cyl;
  const Discretization d(cyl, small_options(4));
  PicardConfig cfg;
  cfg.eps = 0.1;
  const PicardResult r = picard_fixed_point(d, Physics{}, pulse(-1.5e4, 5e-3, 0.4, 0.4), cfg);
  CHECK(r.status == PicardStatus::ContactStop);
  CHECK(r.t_star > 0.0);
  CHECK(r.t_star <= 0.4);
  CHECK(r.log.front().contact);
  CHECK(r.horizon < r.t_star);
  for (const auto& row : r.solution.traj.ledger) {
    CHECK(row.min_radius >= cyl.margin);
    CHECK(row.sup_eta <= cyl.M);
  }
}
