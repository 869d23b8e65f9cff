#pragma once
// Integrals of the weak formulation on the deformed domain Omega^delta and
// its lateral boundary Gamma^delta, evaluated by pullback to the fixed
// reference quadrature. Volume fields are given by their values and Eulerian
// gradients at the images of the reference nodes; traces by their values at
// the (theta, z) columns of the grid.

#include <functional>
#include <string>
#include <vector>

#include "fsi/extension.hpp"
#include "fsi/geometry.hpp"
#include "fsi/koiter.hpp"
#include "fsi/quadrature.hpp"

namespace fsi {

enum class ShellModel { Linear, Koiter };

struct Physics {
  double rho_f = 1.0, mu_f = 0.5, rho_s = 1.0, h = 1.0, alpha = 1.0;
  double lambda_s = 1.0, mu_s = 1.0;
  ShellModel model = ShellModel::Linear;
  MetricConvention metric = MetricConvention::AsPrinted;
  double inflow_normal_sign = 1.0;  // nu = -sign * e_z on Gamma_in
  bool operator==(const Physics&) const = default;
};

// Change-of-variables factors for Omega^delta and Gamma^delta.
struct DeformedQuadrature {
  std::vector<double> w;         // dx weights at nodes
  std::vector<double> radius;    // Eulerian radius of each node
  std::vector<double> surf_w;    // dA = J dtheta dz at columns
  std::vector<double> col_w;     // dtheta dz at columns
  std::vector<SurfaceFrame> frames;
  std::vector<ShellPoint<double>> delta;  // delta at columns
  std::vector<double> zc;                 // z of each column
};

// Throws DegenerateMap or ContactViolation.
DeformedQuadrature deformed_quadrature(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& delta);

using VolumeField = std::vector<EulerianSample>;
using TraceField = std::vector<Vec3>;

inline Mat3 sym_part(const Mat3& g) { return 0.5 * (g + g.transpose()); }

// int D u : D q
double sym_grad_form(const DeformedQuadrature& q, const VolumeField& u, const VolumeField& w);
// 1/2 int (u . grad) v . w - 1/2 int (u . grad) w . v
double convective_form(const DeformedQuadrature& q, const VolumeField& u, const VolumeField& v, const VolumeField& w);
// (1/alpha) int_omega (u o phi - eta_t e_r) . (q o phi - xi e_r) J; throws InvalidSlipLength if alpha <= 0
double slip_form(const DeformedQuadrature& q, const TraceField& u, const std::vector<double>& eta_t, const TraceField& w,
                 const std::vector<double>& xi, double alpha);
// -1/2 int_Gamma (u . q)(d_t delta e_r . nu) dA
double interface_transport_form(const DeformedQuadrature& q, const TraceField& u, const TraceField& w,
                                const std::vector<double>& dt_delta);

// Axial fluxes int q . e_z dA through the two disks.
struct DiskFlux {
  double in = 0.0, out = 0.0;
};
// Scalar pressure history P(t): constant, a smooth pulse A sin^2(pi (t - t0) / w)
// on [t0, t0 + w], or (t, P) samples joined by C^1 cubic Hermite interpolation.
class PressureProfile {
 public:
  PressureProfile() = default;
  static PressureProfile constant(double value);
  static PressureProfile pulse(double t0, double width, double amplitude);
  static PressureProfile samples(std::vector<double> t, std::vector<double> p);
  double operator()(double t) const;
  // "constant(v)", "pulse(t0, width, amplitude)" or "csv:<path>"
  static PressureProfile parse(const std::string& spec);
  const std::string& spec() const { return spec_; }

 private:
  enum Kind { Constant, Pulse, Samples } kind_ = Constant;
  double a_ = 0.0, t0_ = 0.0, w_ = 1.0;
  std::vector<double> t_, p_, m_;
  std::string spec_ = "constant(0)";
};

// Flux of samples on a disk grid (values in cylindrical components).
double disk_flux(const CylGrid& disk, const std::vector<Vec3>& values);
// P_in int_{Gamma_in} q . nu - P_out int_{Gamma_out} q . nu with nu outward.
double forcing(const DiskFlux& f, double P_in, double P_out, double inflow_normal_sign = 1.0);

// q o phi_eta at the columns, for a reference field phi given pointwise: the
// image J_eta phi evaluated at r = R.
TraceField trace_eval(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& eta,
                      const std::function<Vec3(double r, double th, double z)>& phi);

struct EnergyReport {
  double E = 0.0, kinetic = 0.0, shell_kinetic = 0.0, elastic = 0.0;
  double D = 0.0, E_slip = 0.0;
};

// E = rho_f/2 ||u||^2 + rho_s h/2 ||eta_t||^2 + elastic; D = 2 mu_f int |D u|^2;
// E_slip = slip_form(u, eta_t; u, eta_t). elastic is 1/2 int |grad^2 eta|^2 or K(eta)/2.
EnergyReport energy_report(const Physics& ph, const Cylinder& cyl, const DeformedQuadrature& q, const CylGrid& surf,
                           const VolumeField& u, const TraceField& trace_u, const std::vector<double>& eta_t,
                           const TrigPoly<double>& eta);

// ||grad q||_{L^r} / (||D q||_{L^p} + ||q||_{L^p}); throws ZeroDenominator if q = 0.
double korn_ratio(const DeformedQuadrature& q, const VolumeField& f, double p, double r);

// Distance from each node image to the boundary, by minimization over a dense
// sample of Gamma^eta and the exact distance to the disks.
std::vector<double> boundary_distance(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& eta,
                                      int samples_theta, int samples_z);
// ||d^{1 - beta} grad q||_{L^p}
double weighted_gradient_norm(const DeformedQuadrature& q, const VolumeField& f, const std::vector<double>& dist,
                              double beta, double p);

}  // namespace fsi
