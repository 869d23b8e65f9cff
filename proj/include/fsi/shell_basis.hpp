#pragma once
// Clamped shell basis on omega: products of orthonormal Fourier functions in
// theta and orthonormalized bubble-Legendre polynomials in z vanishing to
// first order at z = 0 and z = L. The family is L2(omega)-orthonormal.

#include <vector>

#include <Eigen/Dense>

#include "fsi/trigpoly.hpp"

namespace fsi {

class ShellBasis {
 public:
  struct Mode {
    int trig;    // theta function index (TrigPoly convention)
    int zindex;  // z function index
  };

  ShellBasis() = default;
  ShellBasis(double L, int n_theta, int n_z);

  int size() const { return static_cast<int>(modes_.size()); }
  double length() const { return L_; }
  int n_theta() const { return n_theta_; }
  int n_z() const { return n_z_; }
  int kmax() const { return trig_wavenumber(n_theta_ - 1); }
  int pmax() const { return n_z_ + 3; }
  const Mode& mode(int k) const { return modes_[k]; }
  // polynomial coefficients (in x = 2 z / L - 1) of the orthonormal z functions
  const Eigen::VectorXd& zpoly(int b) const { return zpoly_[b]; }
  double theta_norm(int trig) const;

  // Single basis function as an exact trig-polynomial.
  TrigPoly<double> mode_function(int k) const;
  // sum_k c_k Y_k + offset; coefficients beyond c.size() are zero.
  TrigPoly<double> field(const Eigen::VectorXd& c, double offset = 0.0) const;
  TrigPolyTable table(const std::vector<double>& theta, const std::vector<double>& z) const;

 private:
  double L_ = 1.0;
  int n_theta_ = 0, n_z_ = 0;
  std::vector<Mode> modes_;
  std::vector<Eigen::VectorXd> zpoly_;
};

// A displacement (or test) function expressed in a shell basis plus a constant.
struct ShellField {
  Eigen::VectorXd coeffs;
  double offset = 0.0;
};

}  // namespace fsi
