#pragma once
// Galerkin solver for the decoupled, linearized problem on a prescribed
// moving domain Omega^delta(t).
//
// With u = sum c_k X_k and eta = sum a_k X_k (shell parts) the rows are
//   M(t) c' + (C + B(v) + A + S) c + K a + f0 = F,   a' = c,
// where M = rho_f int X.X + rho_s h int xi xi, A = 2 mu_f int D:D,
// B(v) = b(v, X_j, X_k), S the slip form, K the shell stiffness and
//   C_kj = rho_f int Xdot_j . X_k + rho_f/2 int div W X_j . X_k
//        + rho_f/2 int X_j . (W.grad) X_k - rho_f/2 int X_k . (W.grad) X_j
// with Xdot the rate along mesh trajectories and W = rho(r) d_t delta e_r the
// mesh velocity. The symmetric part of C is M'/2 with respect to the fluid
// mass, so c.C c carries exactly the domain-motion energy flux.
//
// Time stepping is implicit midpoint with the fluid mass averaged between
// the endpoints and the symmetric part of C replaced by (M+ - M-) / (2 dt):
//   Mbar (c+ - c-) / dt + L c_mid + K a_mid + f0 = F,  a+ = a- + dt c_mid,
// where L = (M+ - M-)/(2 dt) + antisym(C) + B + A + S at the midpoint. The
// kinetic energy then changes by (c_mid . work) up to the defect
// (c+ - c-).(M+ - M-).(c+ - c-) / (8 dt), which is O(dt^2) per unit time.

#include <optional>
#include <string>
#include <vector>

#include "fsi/koiter.hpp"
#include "fsi/snapshot.hpp"

namespace fsi {

struct StepOperators {
  Eigen::MatrixXd A, B, Ca, S, K;
  Eigen::VectorXd f0, F;
  double e0 = 0.0;
};

// Fluid plus shell mass of the sampled columns.
Eigen::MatrixXd mass_matrix(const Physics& ph, const Samples& s);
// Viscous, convective, rate, slip and stiffness operators and the forcing at one time.
// v: Eulerian values (3 x nodes) of the linearization velocity, or empty.
StepOperators assemble_operators(const Discretization& d, const Physics& ph, const Samples& s,
                                 const Eigen::MatrixXd& v, double P_in, double P_out);

struct InitialData {
  Eigen::VectorXd eta0;  // shell coefficients of eta(0)
  Eigen::VectorXd eta1;  // shell coefficients of d_t eta(0)
};

struct LedgerRow {
  double t = 0.0, E = 0.0, D = 0.0, E_slip = 0.0, work = 0.0, residual = 0.0;
  double min_eig_M = 0.0, sup_eta = 0.0, min_radius = 0.0, cond = 0.0;
  int picard_iter = 0;
};

struct Trajectory {
  double dt = 0.0;
  std::vector<double> t;                  // step endpoints
  std::vector<Eigen::VectorXd> a, c;      // coefficients at endpoints
  std::vector<Eigen::VectorXd> c_mid;     // midpoint velocities
  std::vector<ReferenceVelocity> v_mid;   // reference form of u at the midpoints
  std::vector<LedgerRow> ledger;          // one row per endpoint
  Eigen::MatrixXd eta;                    // shell coefficients x endpoints
  Eigen::VectorXd projection_residual;    // of the initial data
  bool contact = false;
  double t_star = 0.0;
  std::string contact_reason;
  // energy inequality bookkeeping
  double E0 = 0.0, sup_E = 0.0, dissipation = 0.0, pressure_norm2 = 0.0;
  double max_residual = 0.0, max_E = 0.0;
  double energy_constant() const;
  int steps() const { return static_cast<int>(t.size()) - 1; }
};

struct SolveInputs {
  const Motion* motion = nullptr;
  const std::vector<ReferenceVelocity>* v_mid = nullptr;  // per step, or null for v = 0
  PressureProfile P_in, P_out;
  InitialData init;
  double dt = 1e-3, T = 0.1;
};

// Throws SingularSystem; contact (inadmissible delta or reconstructed eta)
// ends the run early with contact = true and t_star estimated.
Trajectory galerkin_solve(const Discretization& d, const Physics& ph, const SolveInputs& in);

// Shell part of the coefficients (positions 0, 2, 4, ...) as shell-basis coefficients.
Eigen::VectorXd shell_coefficients(const Discretization& d, const Eigen::VectorXd& a);

// Time-integrated residual of the discrete weak identity for extra test
// pairs: sum over steps of dt |row| using operators assembled on the
// enlarged column set. Entries for in-basis test pairs vanish up to roundoff.
std::vector<double> weak_residual(const Discretization& d, const Physics& ph, const SolveInputs& in,
                                  const Trajectory& traj, const std::vector<Column>& tests);

}  // namespace fsi
