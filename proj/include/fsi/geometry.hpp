#pragma once
// Reference cylinder, cutoff profiles, the lateral surface frame and the
// radial domain map psi_eta(r, theta, z) = (r + rho(r) eta(theta, z), theta, z).
// Vectors are stored in physical cylindrical components (e_r, e_theta, e_z).

#include <vector>

#include "fsi/quadrature.hpp"
#include "fsi/trigpoly.hpp"
#include "fsi/types.hpp"

namespace fsi {

// value and first two derivatives of a radial profile
struct Profile {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
};

// C2 quintic step: 0 for x <= x0, 1 for x >= x1.
Profile smoothstep(double x, double x0, double x1);

struct Cylinder {
  double R = 1.0;
  double L = 2.0;
  double a = 0.25;       // rho = 0 on [0, a]
  double b = 0.25;       // rho = 1 on [R - b, R]
  double M = 0.25;       // admissible bound on |eta|
  double margin = 0.05;  // closure prevention: R + eta >= margin

  // rho with rho = 0 near the axis and rho = 1 near the wall
  Profile rho(double r) const { return smoothstep(r, a, R - b); }
  // alpha_1: 0 on [0, (R - M) / 2], 1 on [R - M, R + M]
  Profile alpha1(double r) const { return smoothstep(r, 0.5 * (R - M), R - M); }
  // radial profile of the slip lift: (r / R)^2 rho(r), so c(R) = 1, c'(R) = 2 / R
  Profile slip_profile(double r) const;
  double max_rho_slope() const;
  // throws InvalidCutoff unless 0 < a < R - b, 0 < M < R and M * max rho' < 1
  void validate() const;
  bool operator==(const Cylinder&) const = default;
};

// Surface frame of Gamma_eta at one point of omega.
struct SurfaceFrame {
  Vec3 tau1, tau2;  // d phi / d theta, d phi / d z
  Vec3 n;           // tau1 x tau2
  Vec3 nu;          // outward unit normal
  double J = 0.0;   // |n|
};

// Throws ContactViolation if |eta| >= R.
SurfaceFrame surface_frame(double R, const ShellPoint<double>& eta);
// Closed form |tau1 x tau2| = sqrt((R + eta)^2 (1 + eta_z^2) + eta_theta^2).
double jacobian_closed_form(double R, const ShellPoint<double>& eta);

// Extended displacement eta~ = rho eta and its derivatives in (r, theta, z).
template <class T>
struct RadialJet {
  T e{}, er{}, et{}, ez{}, err{}, ert{}, erz{}, ett{}, etz{}, ezz{};
};

template <class T>
RadialJet<T> radial_jet(const Profile& rho, const ShellPoint<T>& eta) {
  RadialJet<T> j;
  j.e = eta.v * rho.v;
  j.er = eta.v * rho.d1;
  j.et = eta.t * rho.v;
  j.ez = eta.z * rho.v;
  j.err = eta.v * rho.d2;
  j.ert = eta.t * rho.d1;
  j.erz = eta.z * rho.d1;
  j.ett = eta.tt * rho.v;
  j.etz = eta.tz * rho.v;
  j.ezz = eta.zz * rho.v;
  return j;
}

// Matrix G = d psi / d(r, theta, z) in the physical frame:
//   [[1 + eta~_r, eta~_theta, eta~_z], [0, r + eta~, 0], [0, 0, 1]],  det G = (1 + eta~_r)(r + eta~).
template <class T>
Mat3T<T> map_matrix(double r, const RadialJet<T>& j) {
  Mat3T<T> G = Mat3T<T>::Zero();
  G(0, 0) = 1.0 + j.er;
  G(0, 1) = j.et;
  G(0, 2) = j.ez;
  G(1, 1) = r + j.e;
  G(2, 2) = T(1.0);
  return G;
}

template <class T>
T map_det(double r, const RadialJet<T>& j) {
  return (1.0 + j.er) * (r + j.e);
}

// Domain map sampled on a volume grid.
struct DomainMap {
  std::vector<double> eta_ext;  // eta~ at nodes
  std::vector<double> radius;   // r + eta~
  std::vector<Mat3> G;
  std::vector<double> detG;
};

// Throws DegenerateMap if det G <= 0 anywhere.
DomainMap domain_map(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& eta);
// Inverse of the radial map along one (theta, z) column: r with r + rho(r) eta = rx.
double invert_radius(const Cylinder& cyl, double eta, double rx);

// Point in Cartesian coordinates.
inline Vec3 cartesian(double r, double th, double z) { return {r * std::cos(th), r * std::sin(th), z}; }
// Rotation from the cylindrical frame at angle th to Cartesian components.
inline Mat3 frame_rotation(double th) {
  Mat3 Q;
  Q << std::cos(th), -std::sin(th), 0.0, std::sin(th), std::cos(th), 0.0, 0.0, 0.0, 1.0;
  return Q;
}

}  // namespace fsi
