#pragma once
// Divergence-free fluid basis on the reference cylinder.
//
// Trial fields come from analytic potentials, so divergence and the lateral
// normal trace vanish identically at every point:
//   toroidal  u = curl(psi e_z),        psi = g(r) T(theta) sin(k pi z / L), g(R) = 0 if m > 0
//   poloidal  u = curl curl(chi e_z),   chi = g(r) T(theta) cos(k pi z / L), g'(R) = 0 if k > 0
// with g = r^m p(r^2). The basis is the lowest Ritz modes of
//   int grad u : grad v = lambda int u . v
// over that family, L2-orthonormal on the reference cylinder.

#include <vector>

#include "fsi/geometry.hpp"
#include "fsi/piola.hpp"

namespace fsi {

struct PotentialField {
  enum Kind { Toroidal, Poloidal } kind;
  int trig;            // theta function index (TrigPoly convention)
  int k;               // axial wavenumber
  Eigen::VectorXd g;   // radial polynomial in s = r / R
};

VectorJet<double> eval_potential_field(const PotentialField& f, double R, double L, double r, double th, double z);

struct FluidBasisOptions {
  int modes = 12;
  int theta_max = 2;    // Fourier wavenumbers 0..theta_max
  int kz_max = 3;       // axial wavenumbers 0..kz_max
  int radial = 3;       // radial functions per (kind, theta, k)
  int quad_r = 24, quad_theta = 16, quad_z = 32;
  bool operator==(const FluidBasisOptions&) const = default;
};

class FluidBasis {
 public:
  FluidBasis() = default;
  // Throws EigensolverFailure if the Ritz problem fails or yields fewer than opts.modes modes.
  FluidBasis(const Cylinder& cyl, const FluidBasisOptions& opts);

  int size() const { return static_cast<int>(eigenvalues_.size()); }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const std::vector<PotentialField>& family() const { return family_; }
  const Eigen::MatrixXd& coefficients() const { return coeffs_; }

  // all basis jets at one reference point
  std::vector<VectorJet<double>> eval(double r, double th, double z) const;
  // combination sum_k c_k Z_k at one reference point
  VectorJet<double> eval_combination(const Eigen::VectorXd& c, double r, double th, double z) const;
  // table[node * size() + k]
  std::vector<VectorJet<double>> tabulate(const CylGrid& grid) const;

 private:
  double R_ = 1.0, L_ = 1.0;
  std::vector<PotentialField> family_;
  Eigen::MatrixXd coeffs_;  // family x modes
  std::vector<double> eigenvalues_;
};

}  // namespace fsi
