#pragma once
// Discretization context and time slices of the coupled basis.
//
// A Discretization owns the reference grids, the shell and fluid bases and
// their time-independent tables. A Motion supplies the prescribed shell
// displacement delta(t) together with its time derivative (as a dual-number
// trig-polynomial). sample_columns evaluates a list of coupled pairs
// (fluid field on Omega^delta(t), shell function on omega) at one time:
// values, Eulerian gradients and ALE rates d/dt X(t, psi_delta(t, y)) at the
// node images, traces on Gamma^delta, shell jets and disk fluxes.

#include <functional>
#include <memory>
#include <vector>

#include "fsi/dual.hpp"
#include "fsi/extension.hpp"
#include "fsi/fluid_basis.hpp"
#include "fsi/forms.hpp"
#include "fsi/shell_basis.hpp"

namespace fsi {

struct DiscretizationOptions {
  int n = 8;  // coupled basis size, even
  int shell_theta = 5, shell_z = 4;
  FluidBasisOptions fluid;  // fluid.modes is raised to n / 2 if smaller
  int nr = 12, nt = 16, nz = 16;
  int disk_nr = 16;
  bool operator==(const DiscretizationOptions&) const = default;
};

class Discretization {
 public:
  Discretization(const Cylinder& cyl, const DiscretizationOptions& opts);

  const Cylinder& cylinder() const { return cyl_; }
  const DiscretizationOptions& options() const { return opts_; }
  int n() const { return opts_.n; }
  const ShellBasis& shell() const { return shell_; }
  const FluidBasis& fluid() const { return fluid_; }
  const CylGrid& volume() const { return vol_; }
  const CylGrid& surface() const { return surf_; }
  const CylGrid& disk() const { return disk_; }
  // reference jets of fluid mode k at node i: fluid_table()[i * fluid().size() + k]
  const std::vector<VectorJet<double>>& fluid_table() const { return ftab_; }
  const std::vector<VectorJet<double>>& fluid_trace_table() const { return ftrace_; }
  const DiskFlux& fluid_flux(int k) const { return fflux_[k]; }
  TrigPolyTable table(int kmax, int pmax) const { return TrigPolyTable(vol_.theta, vol_.z, cyl_.L, kmax, pmax); }
  // shell mode jets at the columns
  const std::vector<ShellPoint<double>>& shell_jets(int k) const { return sjets_[k]; }
  std::vector<ShellPoint<double>> jets(const TrigPoly<double>& f) const;

 private:
  Cylinder cyl_;
  DiscretizationOptions opts_;
  ShellBasis shell_;
  FluidBasis fluid_;
  CylGrid vol_, surf_, disk_;
  std::vector<VectorJet<double>> ftab_, ftrace_;
  std::vector<DiskFlux> fflux_;
  std::vector<std::vector<ShellPoint<double>>> sjets_;
};

// One coupled pair: fluid part and shell part.
//   Fluid: (Piola image of fluid mode `index`, 0)
//   Slip:  (slip extension F^s_delta(xi), xi)
struct Column {
  enum Kind { Fluid, Slip } kind = Fluid;
  int index = 0;
  TrigPoly<double> xi;
  std::vector<ShellPoint<double>> xi_jets;
};

Column fluid_column(int k);
Column slip_column(const Discretization& d, const TrigPoly<double>& xi);
// Interleaved list: position 2j is (F^s(Y_j), Y_j), position 2j+1 is (J Z_j, 0).
std::vector<Column> interleaved_columns(const Discretization& d, int n);

class Motion {
 public:
  virtual ~Motion() = default;
  // delta(t) with d/dt delta as the dual part
  virtual TrigPoly<Dual> at(double t) const = 0;
};

class StaticMotion : public Motion {
 public:
  explicit StaticMotion(TrigPoly<double> d) : d_(std::move(d)) {}
  TrigPoly<Dual> at(double) const override { return make_dual(d_, TrigPoly<double>(0, 0, d_.length())); }

 private:
  TrigPoly<double> d_;
};

class FunctionMotion : public Motion {
 public:
  explicit FunctionMotion(std::function<TrigPoly<Dual>(double)> f) : f_(std::move(f)) {}
  TrigPoly<Dual> at(double t) const override { return f_(t); }

 private:
  std::function<TrigPoly<Dual>(double)> f_;
};

// Shell coefficients sampled at uniform times, C^1 cubic Hermite in between,
// plus a constant offset.
class SampledMotion : public Motion {
 public:
  SampledMotion(const ShellBasis& basis, double dt, Eigen::MatrixXd coeffs, Eigen::MatrixXd rates, double offset);
  TrigPoly<Dual> at(double t) const override;
  // coefficients and rates at time t
  std::pair<Eigen::VectorXd, Eigen::VectorXd> coefficients(double t) const;

 private:
  const ShellBasis* basis_;
  double dt_;
  Eigen::MatrixXd c_, r_;  // basis size x samples
  double offset_;
};

// Columns evaluated at one time, with the quadrature weights of Omega^delta(t).
struct Samples {
  int nodes = 0, columns = 0, count = 0;
  Eigen::MatrixXd val[3], rate[3], grad[9];  // nodes x count; grad[3 i + j] = d v_i / d x_j
  Eigen::VectorXd w;                         // dx weights
  Eigen::VectorXd Wr;                        // radial mesh velocity rho(r) d_t delta
  Eigen::MatrixXd tr[3];                     // columns x count traces at Gamma^delta
  Eigen::MatrixXd shell;                     // columns x count shell parts
  Eigen::VectorXd sw, cw;                    // J dtheta dz and dtheta dz at columns
  Eigen::VectorXd flux_in, flux_out;         // axial disk fluxes per column
  std::vector<ShellPoint<double>> delta;     // delta at columns
  std::vector<double> delta_t;               // d_t delta at columns
  bool gradients = false;
};

// Throws DegenerateMap or ContactViolation for an inadmissible delta(t).
Samples sample_columns(const Discretization& d, const std::vector<Column>& cols, const TrigPoly<Dual>& delta,
                       bool gradients);
// Fluid part of column k as a VolumeField (for the form-level oracles).
VolumeField column_field(const Samples& s, int k);
TraceField column_trace(const Samples& s, int k);
std::vector<double> column_shell(const Samples& s, int k);

// A reference-configuration representation of a divergence-free velocity:
// phi = sum_k b_k Z_k + q(g) with the slip lift profile; on a domain
// Omega^delta it is realized as the Piola image of phi.
struct ReferenceVelocity {
  Eigen::VectorXd b;
  TrigPoly<double> g;
  bool zero() const { return b.size() == 0 && g.coeffs().isZero(0.0); }
};
ReferenceVelocity operator+(const ReferenceVelocity& x, const ReferenceVelocity& y);
ReferenceVelocity operator*(double a, const ReferenceVelocity& x);
// Reference representation of sum_k c_k X_k on Omega^delta.
ReferenceVelocity reference_velocity(const Discretization& d, const std::vector<Column>& cols, const Eigen::VectorXd& c,
                                     const TrigPoly<double>& delta);
// Values (3 x nodes) of the image of v on Omega^delta.
Eigen::MatrixXd velocity_values(const Discretization& d, const ReferenceVelocity& v, const TrigPoly<double>& delta);
// Squared L2 norm of phi on the reference cylinder.
double reference_norm2(const Discretization& d, const ReferenceVelocity& v);

}  // namespace fsi
