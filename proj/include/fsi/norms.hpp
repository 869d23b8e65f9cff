#pragma once
// Weighted L^p norms on sampled data. p = infinity is spelled p <= 0.

#include <cmath>
#include <limits>
#include <vector>

#include "fsi/quadrature.hpp"
#include "fsi/trigpoly.hpp"

namespace fsi {

inline constexpr double kInfNorm = 0.0;

inline double lp_norm(const std::vector<double>& mag, const std::vector<double>& w, double p) {
  if (p <= 0.0) {
    double m = 0.0;
    for (double x : mag) m = std::max(m, std::abs(x));
    return m;
  }
  std::vector<double> t(mag.size());
  for (std::size_t i = 0; i < mag.size(); ++i) t[i] = w[i] * std::pow(std::abs(mag[i]), p);
  return std::pow(pairwise_sum(t), 1.0 / p);
}

// L^p(omega) norm of |D^k f| for k in {0, 1, 2}; derivatives in (theta, z).
inline double shell_seminorm(const TrigPoly<double>& f, const CylGrid& surf, double p, int k) {
  const TrigPolyTable tab(surf.theta, surf.z, f.length(), f.kmax(), f.pmax());
  const auto pts = f.eval_grid(tab);
  std::vector<double> w(pts.size()), m(pts.size());
  for (int iz = 0; iz < surf.nz(); ++iz)
    for (int it = 0; it < surf.nt(); ++it) {
      const int c = surf.column(it, iz);
      const auto& e = pts[c];
      w[c] = surf.surf_weight(iz);
      if (k == 0)
        m[c] = e.v;
      else if (k == 1)
        m[c] = std::hypot(e.t, e.z);
      else
        m[c] = std::sqrt(e.tt * e.tt + 2.0 * e.tz * e.tz + e.zz * e.zz);
    }
  return lp_norm(m, w, p);
}

// W^{k,p}(omega) norm.
inline double shell_norm(const TrigPoly<double>& f, const CylGrid& surf, double p, int k = 0) {
  if (p <= 0.0) {
    double out = 0.0;
    for (int j = 0; j <= k; ++j) out = std::max(out, shell_seminorm(f, surf, p, j));
    return out;
  }
  double s = 0.0;
  for (int j = 0; j <= k; ++j) s += std::pow(shell_seminorm(f, surf, p, j), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace fsi
