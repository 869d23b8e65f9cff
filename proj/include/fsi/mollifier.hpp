#pragma once
// Time mollification of sampled shell displacements.
//
// R_eps delta = delta * k_h + eps / 2, with k_h a C-infinity bump of radius h
// (discrete weights normalized to unit mass, even reflection at both ends of
// the time interval). h is the largest width on the ladder
// h_j = h_0 2^(-j/4) with ||delta * k_h - delta||_inf <= eps / 2, so that
// delta <= R_eps delta <= delta + eps pointwise.

#include <vector>

#include "fsi/types.hpp"

namespace fsi {

struct MollifierResult {
  Eigen::MatrixXd values;  // times x points
  double width = 0.0;      // kernel radius h
  double deviation = 0.0;  // ||delta * k_h - delta||_inf
  double eps = 0.0;
};

class Mollifier {
 public:
  explicit Mollifier(double eps);
  double eps() const { return eps_; }

  // Rows of S are uniformly spaced samples in time (step dt), columns are points.
  // Throws WidthSearchFailure if no admissible width of at least two samples exists.
  MollifierResult apply(const Eigen::MatrixXd& S, double dt) const;
  // Same with a prescribed width (no search).
  MollifierResult apply_with_width(const Eigen::MatrixXd& S, double dt, double width) const;
  // Largest admissible ladder width for S.
  double search_width(const Eigen::MatrixXd& S, double dt) const;

  // Normalized kernel weights at offsets -m..m, m = floor(width / dt).
  static std::vector<double> kernel(double dt, double width);
  // S * k_h with even reflection.
  static Eigen::MatrixXd convolve(const Eigen::MatrixXd& S, double dt, double width);
  // Central differences in time with even reflection (zero slope at the ends).
  static Eigen::MatrixXd time_derivative(const Eigen::MatrixXd& S, double dt);

 private:
  double eps_;
};

}  // namespace fsi
