#include "fsi/shell_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fsi/quadrature.hpp"

namespace fsi {

namespace {

Eigen::VectorXd poly_mul(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(a.size() + b.size() - 1);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) out(i + j) += a(i) * b(j);
  return out;
}

double poly_eval(const Eigen::VectorXd& c, double s) {
  double v = 0.0;
  for (int p = static_cast<int>(c.size()) - 1; p >= 0; --p) v = v * s + c(p);
  return v;
}

// Legendre polynomial P_j(x) in monomial coefficients of x
Eigen::VectorXd legendre(int j) {
  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(j + 1), p1 = Eigen::VectorXd::Zero(j + 1);
  p0(0) = 1.0;
  if (j == 0) return p0;
  p1(1) = 1.0;
  for (int k = 2; k <= j; ++k) {
    Eigen::VectorXd p2 = Eigen::VectorXd::Zero(j + 1);
    for (int p = 0; p <= j; ++p) {
      const double xp = p >= 1 ? p1(p - 1) : 0.0;
      p2(p) = ((2.0 * k - 1.0) * xp - (k - 1.0) * p0(p)) / k;
    }
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

ShellBasis::ShellBasis(double L, int n_theta, int n_z) : L_(L), n_theta_(n_theta), n_z_(n_z) {
  if (n_theta < 1 || n_z < 1) throw std::invalid_argument("ShellBasis: empty basis");
  // bubble s^2 (1-s)^2 = (1 - x^2)^2 / 16 with x = 2 z / L - 1
  Eigen::VectorXd bubble = Eigen::VectorXd::Zero(5);
  bubble(0) = 1.0 / 16.0;
  bubble(2) = -2.0 / 16.0;
  bubble(4) = 1.0 / 16.0;
  std::vector<Eigen::VectorXd> raw;
  for (int j = 0; j < n_z; ++j) {
    Eigen::VectorXd c = poly_mul(bubble, legendre(j));
    c.conservativeResize(pmax() + 1);
    c.tail(pmax() + 1 - (j + 5)).setZero();
    raw.push_back(c);
  }
  // Gram matrix in L2(0, L), exact by Gauss quadrature
  const Rule q = gauss_legendre(n_z + 6, -1.0, 1.0);
  Eigen::MatrixXd vals(q.size(), n_z);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (int j = 0; j < n_z; ++j) vals(i, j) = poly_eval(raw[j], q.x[i]);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n_z, n_z);
  for (std::size_t i = 0; i < q.size(); ++i) gram += 0.5 * L * q.w[i] * vals.row(i).transpose() * vals.row(i);
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  const Eigen::MatrixXd Linv = llt.matrixL().solve(Eigen::MatrixXd::Identity(n_z, n_z));
  for (int b = 0; b < n_z; ++b) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(pmax() + 1);
    for (int j = 0; j <= b; ++j) c += Linv(b, j) * raw[j];
    zpoly_.push_back(c);
  }
  for (int a = 0; a < n_theta; ++a)
    for (int b = 0; b < n_z; ++b) modes_.push_back({a, b});
  std::stable_sort(modes_.begin(), modes_.end(), [](const Mode& x, const Mode& y) {
    const int kx = trig_wavenumber(x.trig) + x.zindex, ky = trig_wavenumber(y.trig) + y.zindex;
    if (kx != ky) return kx < ky;
    if (x.trig != y.trig) return x.trig < y.trig;
    return x.zindex < y.zindex;
  });
}

double ShellBasis::theta_norm(int trig) const {
  return trig == 0 ? 1.0 / std::sqrt(2.0 * std::numbers::pi) : 1.0 / std::sqrt(std::numbers::pi);
}

TrigPoly<double> ShellBasis::mode_function(int k) const {
  TrigPoly<double> f(kmax(), pmax(), L_);
  const Mode& m = modes_[k];
  const double s = theta_norm(m.trig);
  for (int p = 0; p <= pmax(); ++p) f(m.trig, p) = s * zpoly_[m.zindex](p);
  return f;
}

TrigPoly<double> ShellBasis::field(const Eigen::VectorXd& c, double offset) const {
  TrigPoly<double> f(kmax(), pmax(), L_);
  f(0, 0) = offset;
  const int n = std::min<int>(static_cast<int>(c.size()), size());
  for (int k = 0; k < n; ++k) {
    if (c(k) == 0.0) continue;
    const Mode& m = modes_[k];
    const double s = c(k) * theta_norm(m.trig);
    for (int p = 0; p <= pmax(); ++p) f(m.trig, p) += s * zpoly_[m.zindex](p);
  }
  return f;
}

TrigPolyTable ShellBasis::table(const std::vector<double>& theta, const std::vector<double>& z) const {
  return TrigPolyTable(theta, z, L_, kmax(), pmax());
}

}  // namespace fsi
