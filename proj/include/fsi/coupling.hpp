#pragma once
// Outer fixed-point loop for the coupled problem: prescribe a shell motion
// delta and a linearization velocity v, solve the decoupled problem on the
// mollified motion, relax toward the result and repeat.

#include <string>
#include <vector>

#include "fsi/galerkin.hpp"
#include "fsi/mollifier.hpp"

namespace fsi {

struct PicardConfig {
  double tol = 1e-6;
  int max_iters = 50;
  double relax = 0.7;
  double eps = 0.02;  // mollifier parameter (absolute length)
  void validate() const;
  bool operator==(const PicardConfig&) const = default;
};

struct ProblemData {
  PressureProfile P_in, P_out;
  InitialData init;
  double dt = 1e-3, T = 0.1;
};

// Prescribed motion built from raw shell-coefficient samples at the step endpoints.
struct MollifiedMotion {
  Eigen::MatrixXd coeffs, rates;  // shell basis size x samples
  double offset = 0.0, width = 0.0, deviation = 0.0;
  SampledMotion motion(const Discretization& d, double dt) const {
    return SampledMotion(d.shell(), dt, coeffs, rates, offset);
  }
};
MollifiedMotion mollify_motion(const Discretization& d, const Eigen::MatrixXd& raw, double dt, double eps);

// Single inner solve around (R_eps delta, v).
struct DecoupledResult {
  Trajectory traj;
  MollifiedMotion motion;
};
DecoupledResult decoupled_solve(const Discretization& d, const Physics& ph, const ProblemData& data,
                                const Eigen::MatrixXd& delta_raw, const std::vector<ReferenceVelocity>& v, double eps);

enum class PicardStatus { Converged, NonConvergence, ContactStop };
std::string to_string(PicardStatus s);

struct IterationLog {
  int iter = 0;
  double d_delta = 0.0, d_v = 0.0, update = 0.0;
  double sup_E = 0.0, min_radius = 0.0, max_residual = 0.0, width = 0.0;
  int steps = 0;
  bool contact = false;
  double t_star = 0.0;
};

struct PicardResult {
  PicardStatus status = PicardStatus::NonConvergence;
  int iterations = 0;
  DecoupledResult solution;  // decoupled solve at the accepted iterate
  Eigen::MatrixXd delta;     // accepted raw shell samples
  std::vector<ReferenceVelocity> v;
  std::vector<IterationLog> log;
  double t_star = 0.0;       // set on ContactStop
  double self_consistency = 0.0;
  double horizon = 0.0;
};

PicardResult picard_fixed_point(const Discretization& d, const Physics& ph, const ProblemData& data,
                                const PicardConfig& cfg);

// Space-time distances between (delta, v) iterates: sup-norm of the shell
// field and L2 of the reference velocity.
double shell_sup_distance(const Discretization& d, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
double velocity_l2_distance(const Discretization& d, const std::vector<ReferenceVelocity>& a,
                            const std::vector<ReferenceVelocity>& b, double dt);

// Pairwise L2 distances of u chi, d_t eta and grad^2 eta between successive levels.
struct LevelRun {
  std::string label;
  const Discretization* disc = nullptr;
  PicardResult result;
};
struct CauchyTable {
  std::vector<std::string> labels;
  std::vector<double> d_u, d_eta_t, d_hess;  // distance between level i and i + 1
  bool decreasing() const;
};
CauchyTable convergence_diagnostics(const std::vector<LevelRun>& runs, double dt, int time_stride = 1);

}  // namespace fsi
