#pragma once
// Shell elastic energies: the linear bending model and the nonlinear Koiter
// model with its linearization about a given displacement delta.
//
//   K(eta) = h/6 int A G(eta) : G(eta) + h^3/48 int A R#(eta) : R#(eta),
//   A T = lambda tr(T) I + 2 mu T.
// K(eta, xi) pairs A G(eta) with the Frechet derivative G'(eta) xi (and the
// same for R#), so d/ds K(eta + s xi) = 2 K(eta, xi) and the elastic energy is K / 2.

#include <vector>

#include "fsi/quadrature.hpp"
#include "fsi/trigpoly.hpp"
#include "fsi/types.hpp"

namespace fsi {

enum class MetricConvention { AsPrinted, VanishingAtZero };

struct KoiterParams {
  double R = 1.0;
  double h = 1.0;
  double lambda = 1.0;
  double mu = 1.0;
  MetricConvention metric = MetricConvention::AsPrinted;
};

using SP = ShellPoint<double>;

Mat2 metric_change(const KoiterParams& p, const SP& eta);
Mat2 curvature_change(const KoiterParams& p, const SP& eta);
Mat2 metric_change_derivative(const KoiterParams& p, const SP& eta, const SP& xi);
Mat2 curvature_change_derivative(const KoiterParams& p, const SP& eta, const SP& xi);

// Linearized about delta: affine in eta, equal to the nonlinear tensors at delta = eta.
Mat2 metric_change_lin(const KoiterParams& p, const SP& delta, const SP& eta);
Mat2 curvature_change_lin(const KoiterParams& p, const SP& delta, const SP& eta);
Mat2 metric_change_lin_derivative(const KoiterParams& p, const SP& delta, const SP& xi);
Mat2 curvature_change_lin_derivative(const KoiterParams& p, const SP& delta, const SP& xi);

// A S : T
inline double elastic_product(const KoiterParams& p, const Mat2& S, const Mat2& T) {
  return p.lambda * S.trace() * T.trace() + 2.0 * p.mu * (S.array() * T.array()).sum();
}
// smallest eigenvalue of A on symmetric 2x2 tensors (Mandel basis)
double elasticity_min_eigenvalue(const KoiterParams& p);

// Integrals on omega over the (theta, z) nodes of a surface grid.
double koiter_energy(const KoiterParams& p, const CylGrid& surf, const TrigPoly<double>& eta);
double koiter_form(const KoiterParams& p, const CylGrid& surf, const TrigPoly<double>& eta, const TrigPoly<double>& xi);
double koiter_energy_lin(const KoiterParams& p, const CylGrid& surf, const TrigPoly<double>& delta,
                         const TrigPoly<double>& eta);
double koiter_form_lin(const KoiterParams& p, const CylGrid& surf, const TrigPoly<double>& delta,
                       const TrigPoly<double>& eta, const TrigPoly<double>& xi);

// 1/2 int |grad^2 eta|^2 (Hessian in (theta, z))
double bending_energy_linear(const CylGrid& surf, const TrigPoly<double>& eta);
// int grad^2 eta : grad^2 xi
double bending_form_linear(const CylGrid& surf, const TrigPoly<double>& eta, const TrigPoly<double>& xi);

// Galerkin pieces of the linearized Koiter term for shell functions given by
// their jets at the surface nodes: K_delta(eta, Y_k) = (Kmat a)_k + f0_k for eta = sum a_j Y_j.
struct KoiterLinearSystem {
  MatrixXd K;
  VectorXd f0;
  double e0 = 0.0;  // K_delta(0)
};
KoiterLinearSystem koiter_lin_system(const KoiterParams& p, const std::vector<double>& weights,
                                     const std::vector<SP>& delta, const std::vector<std::vector<SP>>& modes);

// Sampled coercivity surrogate K(eta) >= c (||eta||_4^4 + ||grad eta||_4^4 + ||h grad^2 eta||_2^2) - C0.
struct CoercivityFit {
  double c = 0.0, C0 = 0.0;
  int samples = 0;
  bool positive() const { return c > 0.0 && C0 > 0.0; }
};
CoercivityFit coercivity_fit(const KoiterParams& p, const CylGrid& surf, const std::vector<TrigPoly<double>>& etas);

}  // namespace fsi
