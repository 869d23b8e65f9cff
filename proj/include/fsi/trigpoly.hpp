#pragma once
// Functions on omega = [0, 2pi) x (0, L) of the form
//   f(theta, z) = sum_j sum_p c(j, p) T_j(theta) x^p,   x = 2 z / L - 1,
// with T_0 = 1, T_{2m-1} = cos(m theta), T_{2m} = sin(m theta). Products,
// derivatives and the antiderivatives used by the flux lift are exact.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "fsi/dual.hpp"

namespace fsi {

// value and derivatives of a scalar function on omega at one point
template <class T>
struct ShellPoint {
  T v{}, t{}, z{}, tt{}, tz{}, zz{};
};

inline int trig_wavenumber(int j) { return (j + 1) / 2; }
inline bool trig_is_sine(int j) { return j > 0 && j % 2 == 0; }
inline int trig_index(bool sine, int m) { return m == 0 ? 0 : (sine ? 2 * m : 2 * m - 1); }

// T_j and its first two derivatives at theta
inline void trig_eval(int j, double th, double out[3]) {
  const int m = trig_wavenumber(j);
  if (j == 0) {
    out[0] = 1.0; out[1] = 0.0; out[2] = 0.0;
  } else if (trig_is_sine(j)) {
    const double s = std::sin(m * th), c = std::cos(m * th);
    out[0] = s; out[1] = m * c; out[2] = -m * m * s;
  } else {
    const double s = std::sin(m * th), c = std::cos(m * th);
    out[0] = c; out[1] = -m * s; out[2] = -m * m * c;
  }
}

// Tabulated T_j (rows: nodes, cols: j) and x^p (rows: p, cols: nodes) with derivatives.
struct TrigPolyTable {
  Eigen::MatrixXd th[3];  // value, d/dtheta, d2/dtheta2
  Eigen::MatrixXd zp[3];  // value, d/dz, d2/dz2
  int kmax = 0, pmax = 0;

  TrigPolyTable() = default;
  TrigPolyTable(const std::vector<double>& theta, const std::vector<double>& z, double L, int kmax_, int pmax_)
      : kmax(kmax_), pmax(pmax_) {
    const int nj = 2 * kmax + 1;
    for (auto& m : th) m.resize(theta.size(), nj);
    for (std::size_t i = 0; i < theta.size(); ++i)
      for (int j = 0; j < nj; ++j) {
        double o[3];
        trig_eval(j, theta[i], o);
        for (int d = 0; d < 3; ++d) th[d](i, j) = o[d];
      }
    for (auto& m : zp) m.setZero(pmax + 1, z.size());
    const double dx = 2.0 / L;
    for (std::size_t k = 0; k < z.size(); ++k) {
      const double x = dx * z[k] - 1.0;
      for (int p = 0; p <= pmax; ++p) {
        zp[0](p, k) = std::pow(x, p);
        if (p >= 1) zp[1](p, k) = p * std::pow(x, p - 1) * dx;
        if (p >= 2) zp[2](p, k) = p * (p - 1) * std::pow(x, p - 2) * dx * dx;
      }
    }
  }
};

template <class T>
class TrigPoly {
 public:
  using Coeffs = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

  TrigPoly() : TrigPoly(0, 0, 1.0) {}
  TrigPoly(int kmax, int pmax, double L) : L_(L) { c_ = Coeffs::Zero(2 * kmax + 1, pmax + 1); }

  static TrigPoly constant(T value, double L) {
    TrigPoly f(0, 0, L);
    f.c_(0, 0) = value;
    return f;
  }

  int kmax() const { return static_cast<int>((c_.rows() - 1) / 2); }
  int pmax() const { return static_cast<int>(c_.cols() - 1); }
  double length() const { return L_; }
  Coeffs& coeffs() { return c_; }
  const Coeffs& coeffs() const { return c_; }
  T& operator()(int j, int p) { return c_(j, p); }
  const T& operator()(int j, int p) const { return c_(j, p); }

  TrigPoly padded(int kmax, int pmax) const {
    TrigPoly out(std::max(kmax, this->kmax()), std::max(pmax, this->pmax()), L_);
    out.c_.topLeftCorner(c_.rows(), c_.cols()) = c_;
    return out;
  }

  TrigPoly& operator+=(const TrigPoly& o) {
    if (o.c_.rows() > c_.rows() || o.c_.cols() > c_.cols()) *this = padded(o.kmax(), o.pmax());
    c_.topLeftCorner(o.c_.rows(), o.c_.cols()) += o.c_;
    return *this;
  }
  TrigPoly& operator*=(const T& a) {
    c_ *= a;
    return *this;
  }
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator*(TrigPoly a, const T& s) { return a *= s; }

  TrigPoly product(const TrigPoly& o) const {
    TrigPoly out(kmax() + o.kmax(), pmax() + o.pmax(), L_);
    for (int ja = 0; ja < c_.rows(); ++ja) {
      const int ma = trig_wavenumber(ja);
      const bool sa = trig_is_sine(ja);
      for (int jb = 0; jb < o.c_.rows(); ++jb) {
        const int mb = trig_wavenumber(jb);
        const bool sb = trig_is_sine(jb);
        // (row poly a) * (row poly b)
        Eigen::Matrix<T, Eigen::Dynamic, 1> prod = Eigen::Matrix<T, Eigen::Dynamic, 1>::Zero(pmax() + o.pmax() + 1);
        bool any = false;
        for (int p = 0; p < c_.cols(); ++p) {
          if (c_(ja, p) == T(0.0)) continue;
          for (int q = 0; q < o.c_.cols(); ++q) {
            if (o.c_(jb, q) == T(0.0)) continue;
            prod(p + q) += c_(ja, p) * o.c_(jb, q);
            any = true;
          }
        }
        if (!any) continue;
        if (!sa && !sb) {
          out.add_term(false, ma - mb, prod, 0.5);
          out.add_term(false, ma + mb, prod, 0.5);
        } else if (sa && sb) {
          out.add_term(false, ma - mb, prod, 0.5);
          out.add_term(false, ma + mb, prod, -0.5);
        } else if (sa && !sb) {
          out.add_term(true, ma + mb, prod, 0.5);
          out.add_term(true, ma - mb, prod, 0.5);
        } else {
          out.add_term(true, ma + mb, prod, 0.5);
          out.add_term(true, ma - mb, prod, -0.5);
        }
      }
    }
    return out;
  }

  TrigPoly d_theta() const {
    TrigPoly out(kmax(), pmax(), L_);
    for (int j = 1; j < c_.rows(); ++j) {
      const int m = trig_wavenumber(j);
      if (trig_is_sine(j))
        out.c_.row(trig_index(false, m)) += c_.row(j) * T(double(m));
      else
        out.c_.row(trig_index(true, m)) -= c_.row(j) * T(double(m));
    }
    return out;
  }

  TrigPoly d_z() const {
    TrigPoly out(kmax(), std::max(pmax() - 1, 0), L_);
    for (int p = 1; p < c_.cols(); ++p) out.c_.col(p - 1) = c_.col(p) * T(2.0 * p / L_);
    return out;
  }

  // theta-mean, a function of z only
  TrigPoly theta_mean() const {
    TrigPoly out(0, pmax(), L_);
    out.c_.row(0) = c_.row(0);
    return out;
  }

  // antiderivative in theta of f - theta_mean(f), itself mean-free
  TrigPoly theta_antiderivative() const {
    TrigPoly out(kmax(), pmax(), L_);
    for (int j = 1; j < c_.rows(); ++j) {
      const int m = trig_wavenumber(j);
      if (trig_is_sine(j))
        out.c_.row(trig_index(false, m)) -= c_.row(j) * T(1.0 / m);
      else
        out.c_.row(trig_index(true, m)) += c_.row(j) * T(1.0 / m);
    }
    return out;
  }

  // integral from 0 to z (row-wise); x = -1 at z = 0
  TrigPoly z_antiderivative() const {
    TrigPoly out(kmax(), pmax() + 1, L_);
    for (int p = 0; p < c_.cols(); ++p) {
      const double f = 0.5 * L_ / (p + 1);
      out.c_.col(p + 1) += c_.col(p) * T(f);
      out.c_.col(0) -= c_.col(p) * T(p % 2 == 0 ? -f : f);
    }
    return out;
  }

  ShellPoint<T> eval(double th, double z) const {
    ShellPoint<T> out;
    const double dx = 2.0 / L_;
    const double x = dx * z - 1.0;
    for (int j = 0; j < c_.rows(); ++j) {
      double tj[3];
      trig_eval(j, th, tj);
      T a0(0.0), a1(0.0), a2(0.0);
      double xp = 1.0;
      for (int p = 0; p < c_.cols(); ++p) {
        a0 += c_(j, p) * xp;
        if (p + 1 < c_.cols()) a1 += c_(j, p + 1) * ((p + 1) * xp * dx);
        if (p + 2 < c_.cols()) a2 += c_(j, p + 2) * ((p + 2) * (p + 1) * xp * dx * dx);
        xp *= x;
      }
      out.v += a0 * tj[0];
      out.t += a0 * tj[1];
      out.tt += a0 * tj[2];
      out.z += a1 * tj[0];
      out.tz += a1 * tj[1];
      out.zz += a2 * tj[0];
    }
    return out;
  }

  // Evaluate on the (theta, z) tensor grid of a table; output indexed by iz * ntheta + it.
  std::vector<ShellPoint<T>> eval_grid(const TrigPolyTable& tab) const {
    const int nt = static_cast<int>(tab.th[0].rows());
    const int nz = static_cast<int>(tab.zp[0].cols());
    const int nj = static_cast<int>(c_.rows()), np = static_cast<int>(c_.cols());
    // q_d(j, k) = sum_p c(j,p) * d^d/dz^d s^p at z_k
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> q[3];
    for (int d = 0; d < 3; ++d) {
      q[d] = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>::Zero(nj, nz);
      for (int j = 0; j < nj; ++j)
        for (int k = 0; k < nz; ++k) {
          T acc(0.0);
          for (int p = 0; p < np && p <= tab.pmax; ++p) acc += c_(j, p) * tab.zp[d](p, k);
          q[d](j, k) = acc;
        }
    }
    std::vector<ShellPoint<T>> out(static_cast<std::size_t>(nt) * nz);
    for (int k = 0; k < nz; ++k)
      for (int i = 0; i < nt; ++i) {
        ShellPoint<T>& o = out[static_cast<std::size_t>(k) * nt + i];
        for (int j = 0; j < nj && j < tab.th[0].cols(); ++j) {
          const double t0 = tab.th[0](i, j), t1 = tab.th[1](i, j), t2 = tab.th[2](i, j);
          o.v += q[0](j, k) * t0;
          o.t += q[0](j, k) * t1;
          o.tt += q[0](j, k) * t2;
          o.z += q[1](j, k) * t0;
          o.tz += q[1](j, k) * t1;
          o.zz += q[2](j, k) * t0;
        }
      }
    return out;
  }

  TrigPoly<double> value_part() const {
    TrigPoly<double> out(kmax(), pmax(), L_);
    for (int j = 0; j < c_.rows(); ++j)
      for (int p = 0; p < c_.cols(); ++p) out(j, p) = value_of(c_(j, p));
    return out;
  }

 private:
  void add_term(bool sine, int m, const Eigen::Matrix<T, Eigen::Dynamic, 1>& poly, double scale) {
    if (m < 0) {
      m = -m;
      if (sine) scale = -scale;
    }
    if (sine && m == 0) return;
    const int j = trig_index(sine, m);
    for (int p = 0; p < poly.size(); ++p) c_(j, p) += poly(p) * T(scale);
  }

  double L_ = 1.0;
  Coeffs c_;
};

inline TrigPoly<Dual> make_dual(const TrigPoly<double>& value, const TrigPoly<double>& rate) {
  const int k = std::max(value.kmax(), rate.kmax()), p = std::max(value.pmax(), rate.pmax());
  const TrigPoly<double> a = value.padded(k, p), b = rate.padded(k, p);
  TrigPoly<Dual> out(k, p, value.length());
  for (int j = 0; j < 2 * k + 1; ++j)
    for (int q = 0; q <= p; ++q) out(j, q) = Dual(a(j, q), b(j, q));
  return out;
}

}  // namespace fsi
