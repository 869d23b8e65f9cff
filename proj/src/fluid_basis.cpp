#include "fsi/fluid_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace fsi {

namespace {

// g and its first three r-derivatives for a polynomial in s = r / R
void radial_eval(const Eigen::VectorXd& c, double R, double r, double out[4]) {
  const double s = r / R;
  out[0] = out[1] = out[2] = out[3] = 0.0;
  double sp = 1.0;  // s^p
  for (int p = 0; p < c.size(); ++p) {
    out[0] += c(p) * sp;
    if (p + 1 < c.size()) out[1] += c(p + 1) * (p + 1) * sp;
    if (p + 2 < c.size()) out[2] += c(p + 2) * (p + 2) * (p + 1) * sp;
    if (p + 3 < c.size()) out[3] += c(p + 3) * (p + 3) * (p + 2) * (p + 1) * sp;
    sp *= s;
  }
  out[1] /= R;
  out[2] /= R * R;
  out[3] /= R * R * R;
}

Eigen::VectorXd monomial(int p, int size) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(size);
  c(p) = 1.0;
  return c;
}

}  // namespace

VectorJet<double> eval_potential_field(const PotentialField& f, double R, double L, double r, double th, double z) {
  double g[4];
  radial_eval(f.g, R, r, g);
  double T[3];
  trig_eval(f.trig, th, T);
  const double kap = f.k * std::numbers::pi / L;
  const double S = std::sin(kap * z), C = std::cos(kap * z);
  const double ir = 1.0 / r;
  VectorJet<double> u;
  if (f.kind == PotentialField::Toroidal) {
    u.v << g[0] * ir * T[1] * S, -g[1] * T[0] * S, 0.0;
    u.d(0, 0) = (g[1] * ir - g[0] * ir * ir) * T[1] * S;
    u.d(1, 0) = -g[2] * T[0] * S;
    u.d(0, 1) = g[0] * ir * T[2] * S;
    u.d(1, 1) = -g[1] * T[1] * S;
    u.d(0, 2) = g[0] * ir * T[1] * kap * C;
    u.d(1, 2) = -g[1] * T[0] * kap * C;
  } else {
    const int m = trig_wavenumber(f.trig);
    const double m2 = double(m) * m;
    const double h = g[2] + g[1] * ir - m2 * g[0] * ir * ir;
    const double dh = g[3] + g[2] * ir - g[1] * ir * ir - m2 * g[1] * ir * ir + 2.0 * m2 * g[0] * ir * ir * ir;
    u.v << -kap * g[1] * T[0] * S, -kap * g[0] * ir * T[1] * S, -h * T[0] * C;
    u.d(0, 0) = -kap * g[2] * T[0] * S;
    u.d(1, 0) = -kap * (g[1] * ir - g[0] * ir * ir) * T[1] * S;
    u.d(2, 0) = -dh * T[0] * C;
    u.d(0, 1) = -kap * g[1] * T[1] * S;
    u.d(1, 1) = -kap * g[0] * ir * T[2] * S;
    u.d(2, 1) = -h * T[1] * C;
    u.d(0, 2) = -kap * kap * g[1] * T[0] * C;
    u.d(1, 2) = -kap * kap * g[0] * ir * T[1] * C;
    u.d(2, 2) = kap * h * T[0] * S;
  }
  return u;
}

FluidBasis::FluidBasis(const Cylinder& cyl, const FluidBasisOptions& opts) : R_(cyl.R), L_(cyl.L) {
  const int J = opts.radial;
  const int maxdeg = opts.theta_max + 2 * J + 4;
  for (int trig = 0; trig <= 2 * opts.theta_max; ++trig) {
    const int m = trig_wavenumber(trig);
    for (int k = 1; k <= opts.kz_max; ++k)
      for (int j = 0; j < J; ++j) {
        PotentialField f{PotentialField::Toroidal, trig, k, {}};
        if (m == 0) {
          f.g = monomial(2 * (j + 1), maxdeg + 1);
        } else {
          f.g = monomial(m + 2 * j, maxdeg + 1) - monomial(m + 2 * j + 2, maxdeg + 1);
        }
        family_.push_back(f);
      }
    for (int k = 0; k <= opts.kz_max; ++k)
      for (int j = 0; j < J; ++j) {
        PotentialField f{PotentialField::Poloidal, trig, k, {}};
        if (k == 0) {
          f.g = monomial(m + 2 * (j + 1), maxdeg + 1);
        } else {
          if (m == 0 && j == 0) continue;
          const int p = m + 2 * j;
          f.g = monomial(p, maxdeg + 1) - (double(p) / (p + 2)) * monomial(p + 2, maxdeg + 1);
        }
        family_.push_back(f);
      }
  }

  const int nf = static_cast<int>(family_.size());
  const CylGrid q = volume_grid(cyl.R, cyl.L, opts.quad_r, std::max(opts.quad_theta, 4 * opts.theta_max + 4), opts.quad_z);
  const int N = q.size();
  Eigen::MatrixXd U[3], D[9];
  for (auto& x : U) x.resize(N, nf);
  for (auto& x : D) x.resize(N, nf);
  Eigen::VectorXd w(N);
  for (int iz = 0; iz < q.nz(); ++iz)
    for (int it = 0; it < q.nt(); ++it)
      for (int ir = 0; ir < q.nr(); ++ir) {
        const int i = q.node(ir, it, iz);
        w(i) = q.ref_weight(ir, it, iz);
        for (int f = 0; f < nf; ++f) {
          const VectorJet<double> u = eval_potential_field(family_[f], R_, L_, q.r[ir], q.theta[it], q.z[iz]);
          const Mat3 g = physical_gradient(u, q.r[ir]);
          for (int c = 0; c < 3; ++c) U[c](i, f) = u.v(c);
          for (int c = 0; c < 9; ++c) D[c](i, f) = g(c / 3, c % 3);
        }
      }
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(nf, nf), stiff = Eigen::MatrixXd::Zero(nf, nf);
  for (auto& x : U) gram += x.transpose() * w.asDiagonal() * x;
  for (auto& x : D) stiff += x.transpose() * w.asDiagonal() * x;
  const double scale = gram.diagonal().maxCoeff();

  struct Candidate {
    double lambda;
    int trig, k;
    Eigen::VectorXd c;
  };
  std::vector<Candidate> cands;
  for (int trig = 0; trig <= 2 * opts.theta_max; ++trig)
    for (int k = 0; k <= opts.kz_max; ++k) {
      std::vector<int> idx;
      for (int f = 0; f < nf; ++f)
        if (family_[f].trig == trig && family_[f].k == k) idx.push_back(f);
      if (idx.empty()) continue;
      const int nb = static_cast<int>(idx.size());
      Eigen::MatrixXd Gb(nb, nb), Kb(nb, nb);
      for (int a = 0; a < nb; ++a)
        for (int b = 0; b < nb; ++b) {
          Gb(a, b) = gram(idx[a], idx[b]);
          Kb(a, b) = stiff(idx[a], idx[b]);
        }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ge(Gb);
      if (ge.info() != Eigen::Success) throw EigensolverFailure("Gram eigendecomposition failed");
      std::vector<int> keep;
      for (int a = 0; a < nb; ++a)
        if (ge.eigenvalues()(a) > 1e-11 * scale) keep.push_back(a);
      if (keep.empty()) continue;
      Eigen::MatrixXd V(nb, keep.size());
      for (std::size_t a = 0; a < keep.size(); ++a)
        V.col(a) = ge.eigenvectors().col(keep[a]) / std::sqrt(ge.eigenvalues()(keep[a]));
      const Eigen::MatrixXd Kr = V.transpose() * Kb * V;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ke(0.5 * (Kr + Kr.transpose()));
      if (ke.info() != Eigen::Success) throw EigensolverFailure("Ritz eigendecomposition failed");
      for (int a = 0; a < ke.eigenvalues().size(); ++a) {
        Eigen::VectorXd cb = V * ke.eigenvectors().col(a);
        Eigen::VectorXd c = Eigen::VectorXd::Zero(nf);
        for (int b = 0; b < nb; ++b) c(idx[b]) = cb(b);
        Eigen::Index imax;
        c.cwiseAbs().maxCoeff(&imax);
        if (c(imax) < 0.0) c = -c;
        cands.push_back({ke.eigenvalues()(a), trig, k, c});
      }
    }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    if (std::abs(x.lambda - y.lambda) > 1e-9 * (1.0 + std::abs(x.lambda))) return x.lambda < y.lambda;
    if (x.trig != y.trig) return x.trig < y.trig;
    return x.k < y.k;
  });
  if (static_cast<int>(cands.size()) < opts.modes)
    throw EigensolverFailure("Ritz family yields " + std::to_string(cands.size()) + " modes, " +
                             std::to_string(opts.modes) + " requested");
  coeffs_.resize(nf, opts.modes);
  for (int a = 0; a < opts.modes; ++a) {
    coeffs_.col(a) = cands[a].c;
    eigenvalues_.push_back(cands[a].lambda);
  }
}

std::vector<VectorJet<double>> FluidBasis::eval(double r, double th, double z) const {
  const int nf = static_cast<int>(family_.size());
  std::vector<VectorJet<double>> out(size());
  for (int f = 0; f < nf; ++f) {
    const VectorJet<double> u = eval_potential_field(family_[f], R_, L_, r, th, z);
    for (int a = 0; a < size(); ++a) {
      const double c = coeffs_(f, a);
      if (c == 0.0) continue;
      out[a].v += c * u.v;
      out[a].d += c * u.d;
    }
  }
  return out;
}

VectorJet<double> FluidBasis::eval_combination(const Eigen::VectorXd& c, double r, double th, double z) const {
  const Eigen::VectorXd fc = coeffs_.leftCols(c.size()) * c;
  VectorJet<double> out;
  for (int f = 0; f < static_cast<int>(family_.size()); ++f) {
    if (fc(f) == 0.0) continue;
    const VectorJet<double> u = eval_potential_field(family_[f], R_, L_, r, th, z);
    out.v += fc(f) * u.v;
    out.d += fc(f) * u.d;
  }
  return out;
}

std::vector<VectorJet<double>> FluidBasis::tabulate(const CylGrid& grid) const {
  std::vector<VectorJet<double>> out(static_cast<std::size_t>(grid.size()) * size());
  for (int iz = 0; iz < grid.nz(); ++iz)
    for (int it = 0; it < grid.nt(); ++it)
      for (int ir = 0; ir < grid.nr(); ++ir) {
        const int i = grid.node(ir, it, iz);
        const auto jets = eval(grid.r[ir], grid.theta[it], grid.z[iz]);
        for (int a = 0; a < size(); ++a) out[static_cast<std::size_t>(i) * size() + a] = jets[a];
      }
  return out;
}

}  // namespace fsi
