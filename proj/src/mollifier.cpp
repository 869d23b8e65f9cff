#include "fsi/mollifier.hpp"

#include <cmath>
#include <string>

#include "fsi/quadrature.hpp"

namespace fsi {

Mollifier::Mollifier(double eps) : eps_(eps) {
  if (!(eps > 0.0)) throw ValidationError("mollifier eps must be positive");
}

std::vector<double> Mollifier::kernel(double dt, double width) {
  const int m = static_cast<int>(std::floor(width / dt + 1e-12));
  std::vector<double> w(2 * m + 1);
  for (int k = -m; k <= m; ++k) {
    const double s = m == 0 ? 0.0 : k * dt / width;
    w[k + m] = std::abs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0;
  }
  const double total = pairwise_sum(w);
  for (double& x : w) x /= total;
  return w;
}

Eigen::MatrixXd Mollifier::convolve(const Eigen::MatrixXd& S, double dt, double width) {
  const auto w = kernel(dt, width);
  const int m = static_cast<int>(w.size() / 2), n = static_cast<int>(S.rows());
  if (n == 1) return S;
  auto reflect = [n](int i) {
    const int period = 2 * (n - 1);
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - i;
  };
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(S.rows(), S.cols());
  for (int i = 0; i < n; ++i)
    for (int k = -m; k <= m; ++k) out.row(i) += w[k + m] * S.row(reflect(i + k));
  return out;
}

Eigen::MatrixXd Mollifier::time_derivative(const Eigen::MatrixXd& S, double dt) {
  const int n = static_cast<int>(S.rows());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(S.rows(), S.cols());
  for (int i = 1; i + 1 < n; ++i) d.row(i) = (S.row(i + 1) - S.row(i - 1)) / (2.0 * dt);
  return d;
}

double Mollifier::search_width(const Eigen::MatrixXd& S, double dt) const {
  const int n = static_cast<int>(S.rows());
  const double h0 = std::max(0.5 * (n - 1) * dt, 2.0 * dt);
  for (int j = 0;; ++j) {
    const double h = h0 * std::pow(2.0, -0.25 * j);
    if (h < 2.0 * dt * (1.0 - 1e-12)) break;
    const double dev = (convolve(S, dt, h) - S).cwiseAbs().maxCoeff();
    if (dev <= 0.5 * eps_) return h;
  }
  throw WidthSearchFailure("no kernel width of at least two samples keeps the deviation below eps/2 = " +
                           std::to_string(0.5 * eps_));
}

MollifierResult Mollifier::apply_with_width(const Eigen::MatrixXd& S, double dt, double width) const {
  MollifierResult r;
  r.eps = eps_;
  r.width = width;
  const Eigen::MatrixXd c = convolve(S, dt, width);
  r.deviation = S.size() ? (c - S).cwiseAbs().maxCoeff() : 0.0;
  r.values = c.array() + 0.5 * eps_;
  return r;
}

MollifierResult Mollifier::apply(const Eigen::MatrixXd& S, double dt) const {
  return apply_with_width(S, dt, search_width(S, dt));
}

}  // namespace fsi
