#pragma once
// Contravariant Piola transform between the reference cylinder and the
// deformed domain, with the chain-rule machinery for gradients of image fields.
//
// With F = d psi/d y in physical cylindrical components,
//   F = [[1 + eta~_r, eta~_theta / r, eta~_z], [0, (r + eta~) / r, 0], [0, 0, 1]],
// the forward transform is J phi = F phi / det F and the inverse is
// det F F^{-1} w. Both are evaluated at reference points y; the image is the
// field w(psi(y)).

#include <array>
#include <vector>

#include "fsi/geometry.hpp"
#include "fsi/types.hpp"

namespace fsi {

// A vector field sample: value and coordinate partials, d.col(a) = d v / d y_a, y = (r, theta, z).
template <class T>
struct VectorJet {
  Vec3T<T> v = Vec3T<T>::Zero();
  Mat3T<T> d = Mat3T<T>::Zero();
};

// Physical-component gradient (grad v)_{ij} = e_i . (e_j . grad) v in cylindrical coordinates.
template <class T>
Mat3T<T> physical_gradient(const VectorJet<T>& f, double r) {
  Mat3T<T> g;
  const double ir = 1.0 / r;
  g(0, 0) = f.d(0, 0);
  g(0, 1) = (f.d(0, 1) - f.v(1)) * ir;
  g(0, 2) = f.d(0, 2);
  g(1, 0) = f.d(1, 0);
  g(1, 1) = (f.d(1, 1) + f.v(0)) * ir;
  g(1, 2) = f.d(1, 2);
  g(2, 0) = f.d(2, 0);
  g(2, 1) = f.d(2, 1) * ir;
  g(2, 2) = f.d(2, 2);
  return g;
}

template <class T>
struct MapJet {
  Mat3T<T> F;
  T detF;
  T detG;  // det F * r, the volume factor dx = det G dr dtheta dz
  std::array<Mat3T<T>, 3> dF;
  std::array<T, 3> ddetF;
};

template <class T>
MapJet<T> map_jet(double r, const RadialJet<T>& j) {
  MapJet<T> m;
  const double ir = 1.0 / r;
  const T a = 1.0 + j.er;
  const T e = (r + j.e) * ir;
  m.F = Mat3T<T>::Zero();
  m.F(0, 0) = a;
  m.F(0, 1) = j.et * ir;
  m.F(0, 2) = j.ez;
  m.F(1, 1) = e;
  m.F(2, 2) = T(1.0);
  m.detF = a * e;
  m.detG = a * (r + j.e);
  for (auto& x : m.dF) x = Mat3T<T>::Zero();
  m.dF[0](0, 0) = j.err;
  m.dF[0](0, 1) = j.ert * ir - j.et * (ir * ir);
  m.dF[0](0, 2) = j.erz;
  m.dF[0](1, 1) = a * ir - (r + j.e) * (ir * ir);
  m.dF[1](0, 0) = j.ert;
  m.dF[1](0, 1) = j.ett * ir;
  m.dF[1](0, 2) = j.etz;
  m.dF[1](1, 1) = j.et * ir;
  m.dF[2](0, 0) = j.erz;
  m.dF[2](0, 1) = j.etz * ir;
  m.dF[2](0, 2) = j.ezz;
  m.dF[2](1, 1) = j.ez * ir;
  for (int k = 0; k < 3; ++k) m.ddetF[k] = m.dF[k](0, 0) * e + a * m.dF[k](1, 1);
  return m;
}

template <class T>
Mat3T<T> inverse_F(const MapJet<T>& m) {
  const T a = m.F(0, 0), b = m.F(0, 1), c = m.F(0, 2), e = m.F(1, 1);
  Mat3T<T> Fi = Mat3T<T>::Zero();
  Fi(0, 0) = 1.0 / a;
  Fi(0, 1) = -b / (a * e);
  Fi(0, 2) = -c / a;
  Fi(1, 1) = 1.0 / e;
  Fi(2, 2) = T(1.0);
  return Fi;
}

// Image of phi with partials with respect to the reference coordinates.
template <class T>
VectorJet<T> piola_forward(const MapJet<T>& m, const VectorJet<T>& phi) {
  VectorJet<T> w;
  const T id = 1.0 / m.detF;
  const Vec3T<T> Fphi = m.F * phi.v;
  w.v = Fphi * id;
  for (int k = 0; k < 3; ++k) {
    const Vec3T<T> dk = m.dF[k] * phi.v + m.F * phi.d.col(k);
    w.d.col(k) = dk * id - Fphi * (m.ddetF[k] * id * id);
  }
  return w;
}

template <class T>
Vec3T<T> piola_inverse(const MapJet<T>& m, const Vec3T<T>& w) {
  return m.detF * (inverse_F(m) * w);
}

// Eulerian gradient grad_x w at psi(y) from the image jet at y.
template <class T>
Mat3T<T> eulerian_gradient(const VectorJet<T>& image, const MapJet<T>& m, double r) {
  return physical_gradient(image, r) * inverse_F(m);
}

template <class T>
VectorJet<Dual> lift_dual(const VectorJet<T>& a) {
  VectorJet<Dual> out;
  for (int i = 0; i < 3; ++i) {
    out.v(i) = Dual(value_of(a.v(i)), deriv_of(a.v(i)));
    for (int k = 0; k < 3; ++k) out.d(i, k) = Dual(value_of(a.d(i, k)), deriv_of(a.d(i, k)));
  }
  return out;
}

inline Vec3 values(const Vec3T<Dual>& x) { return {x(0).v, x(1).v, x(2).v}; }
inline Vec3 rates(const Vec3T<Dual>& x) { return {x(0).d, x(1).d, x(2).d}; }
inline Mat3 values(const Mat3T<Dual>& x) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = x(i, j).v;
  return m;
}

// The algebraic normal-trace identity on r = R: [G] v . n(eta) = (R + eta) v_r, with
// G the coordinate Jacobian d psi/d(r, theta, z) at r = R and n = tau1 x tau2.
double normal_trace_lhs(double R, const ShellPoint<double>& eta, const Vec3& v);

struct PiolaBoundReport {
  double max_value_ratio = 0.0;     // |J phi| / ((1 + |eta| + |grad eta|) |phi|)
  double max_gradient_ratio = 0.0;  // |grad J phi| / ((1+|eta|+|grad eta|)^3 |phi| + |grad^2 eta| |phi| + (1+...)|grad phi|)
};

// Nodewise bound ratios for a reference field given by its jets on the grid nodes.
PiolaBoundReport piola_bound_check(const Cylinder& cyl, const CylGrid& grid, const TrigPoly<double>& eta,
                                   const std::vector<VectorJet<double>>& phi);

}  // namespace fsi
