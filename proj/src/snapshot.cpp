#include "fsi/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fsi {

namespace {

VectorJet<double> jet_values(const VectorJet<Dual>& a) {
  VectorJet<double> o;
  for (int i = 0; i < 3; ++i) {
    o.v(i) = a.v(i).v;
    for (int k = 0; k < 3; ++k) o.d(i, k) = a.d(i, k).v;
  }
  return o;
}

MapJet<double> map_values(const MapJet<Dual>& m) {
  MapJet<double> o;
  o.F = values(m.F);
  o.detF = m.detF.v;
  o.detG = m.detG.v;
  for (int k = 0; k < 3; ++k) {
    o.dF[k] = values(m.dF[k]);
    o.ddetF[k] = m.ddetF[k].v;
  }
  return o;
}

TrigPoly<Dual> constant_dual(const TrigPoly<double>& f) { return make_dual(f, TrigPoly<double>(0, 0, f.length())); }

}  // namespace

Discretization::Discretization(const Cylinder& cyl, const DiscretizationOptions& opts) : cyl_(cyl), opts_(opts) {
  if (opts_.n < 2 || opts_.n % 2 != 0) throw ValidationError("basis size n must be even and >= 2");
  cyl_.validate();
  shell_ = ShellBasis(cyl.L, opts.shell_theta, opts.shell_z);
  if (shell_.size() < opts_.n / 2)
    throw ValidationError("shell basis has " + std::to_string(shell_.size()) + " modes, need " +
                          std::to_string(opts_.n / 2));
  opts_.fluid.modes = std::max(opts_.fluid.modes, opts_.n / 2);
  fluid_ = FluidBasis(cyl_, opts_.fluid);
  vol_ = volume_grid(cyl.R, cyl.L, opts.nr, opts.nt, opts.nz);
  surf_ = surface_grid(cyl.R, cyl.L, opts.nt, opts.nz);
  disk_ = disk_grid(cyl.R, 0.0, opts.disk_nr, opts.nt);
  ftab_ = fluid_.tabulate(vol_);
  ftrace_ = fluid_.tabulate(surf_);
  const int nf = fluid_.size();
  fflux_.resize(nf);
  std::vector<std::vector<Vec3>> in(nf, std::vector<Vec3>(disk_.size())), out = in;
  for (int it = 0; it < disk_.nt(); ++it)
    for (int ir = 0; ir < disk_.nr(); ++ir) {
      const int i = disk_.node(ir, it, 0);
      const auto a = fluid_.eval(disk_.r[ir], disk_.theta[it], 0.0);
      const auto b = fluid_.eval(disk_.r[ir], disk_.theta[it], cyl.L);
      for (int k = 0; k < nf; ++k) {
        in[k][i] = a[k].v;
        out[k][i] = b[k].v;
      }
    }
  for (int k = 0; k < nf; ++k) fflux_[k] = {disk_flux(disk_, in[k]), disk_flux(disk_, out[k])};
  for (int k = 0; k < shell_.size(); ++k) sjets_.push_back(jets(shell_.mode_function(k)));
}

std::vector<ShellPoint<double>> Discretization::jets(const TrigPoly<double>& f) const {
  return f.eval_grid(table(f.kmax(), f.pmax()));
}

Column fluid_column(int k) {
  Column c;
  c.kind = Column::Fluid;
  c.index = k;
  return c;
}

Column slip_column(const Discretization& d, const TrigPoly<double>& xi) {
  Column c;
  c.kind = Column::Slip;
  c.xi = xi;
  c.xi_jets = d.jets(xi);
  return c;
}

std::vector<Column> interleaved_columns(const Discretization& d, int n) {
  std::vector<Column> cols;
  for (int j = 0; j < n / 2; ++j) {
    Column s;
    s.kind = Column::Slip;
    s.index = j;
    s.xi = d.shell().mode_function(j);
    s.xi_jets = d.shell_jets(j);
    cols.push_back(std::move(s));
    cols.push_back(fluid_column(j));
  }
  return cols;
}

SampledMotion::SampledMotion(const ShellBasis& basis, double dt, Eigen::MatrixXd coeffs, Eigen::MatrixXd rates,
                             double offset)
    : basis_(&basis), dt_(dt), c_(std::move(coeffs)), r_(std::move(rates)), offset_(offset) {}

std::pair<Eigen::VectorXd, Eigen::VectorXd> SampledMotion::coefficients(double t) const {
  const int last = static_cast<int>(c_.cols()) - 1;
  if (last == 0) return {c_.col(0), r_.col(0)};
  const double x = std::clamp(t / dt_, 0.0, static_cast<double>(last));
  const int i = std::min(static_cast<int>(std::floor(x)), last - 1);
  const double s = x - i, s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  const double d00 = 6 * s2 - 6 * s, d10 = 3 * s2 - 4 * s + 1, d01 = -6 * s2 + 6 * s, d11 = 3 * s2 - 2 * s;
  Eigen::VectorXd v = h00 * c_.col(i) + h10 * dt_ * r_.col(i) + h01 * c_.col(i + 1) + h11 * dt_ * r_.col(i + 1);
  Eigen::VectorXd r = (d00 * c_.col(i) + d01 * c_.col(i + 1)) / dt_ + d10 * r_.col(i) + d11 * r_.col(i + 1);
  return {v, r};
}

TrigPoly<Dual> SampledMotion::at(double t) const {
  const auto [v, r] = coefficients(t);
  return make_dual(basis_->field(v, offset_), basis_->field(r, 0.0));
}

Samples sample_columns(const Discretization& d, const std::vector<Column>& cols, const TrigPoly<Dual>& delta,
                       bool gradients) {
  const Cylinder& cyl = d.cylinder();
  const CylGrid& g = d.volume();
  const int N = g.size(), C = g.columns(), n = static_cast<int>(cols.size()), nf = d.fluid().size();
  Samples s;
  s.nodes = N;
  s.columns = C;
  s.count = n;
  s.gradients = gradients;
  for (int a = 0; a < 3; ++a) {
    s.val[a] = Eigen::MatrixXd::Zero(N, n);
    s.rate[a] = Eigen::MatrixXd::Zero(N, n);
    s.tr[a] = Eigen::MatrixXd::Zero(C, n);
  }
  if (gradients)
    for (auto& m : s.grad) m = Eigen::MatrixXd::Zero(N, n);
  s.shell = Eigen::MatrixXd::Zero(C, n);
  s.flux_in = Eigen::VectorXd::Zero(n);
  s.flux_out = Eigen::VectorXd::Zero(n);

  const auto dp = delta.eval_grid(d.table(delta.kmax(), delta.pmax()));
  s.delta.resize(C);
  s.delta_t.resize(C);
  s.sw.resize(C);
  s.cw.resize(C);
  std::vector<MapJet<Dual>> tmap(C);
  for (int iz = 0; iz < g.nz(); ++iz)
    for (int it = 0; it < g.nt(); ++it) {
      const int c = g.column(it, iz);
      const auto& e = dp[c];
      s.delta[c] = {e.v.v, e.t.v, e.z.v, e.tt.v, e.tz.v, e.zz.v};
      s.delta_t[c] = e.v.d;
      const SurfaceFrame f = surface_frame(cyl.R, s.delta[c]);
      s.cw[c] = g.surf_weight(iz);
      s.sw[c] = s.cw[c] * f.J;
      tmap[c] = map_jet(cyl.R, radial_jet(cyl.rho(cyl.R), e));
    }
  std::vector<MapJet<Dual>> maps(N);
  std::vector<MapJet<double>> mv(N);
  s.w.resize(N);
  s.Wr.resize(N);
  for (int iz = 0; iz < g.nz(); ++iz)
    for (int it = 0; it < g.nt(); ++it)
      for (int ir = 0; ir < g.nr(); ++ir) {
        const int i = g.node(ir, it, iz), c = g.column(it, iz);
        const double r = g.r[ir];
        const Profile rho = cyl.rho(r);
        maps[i] = map_jet(r, radial_jet(rho, dp[c]));
        mv[i] = map_values(maps[i]);
        if (!(mv[i].detG > 0.0))
          throw DegenerateMap("det G <= 0 at r=" + std::to_string(r) + " theta=" + std::to_string(g.theta[it]) +
                              " z=" + std::to_string(g.z[iz]));
        s.w(i) = g.wr[ir] * g.wtheta * g.wz[iz] * mv[i].detG;
        s.Wr(i) = rho.v * dp[c].v.d;
      }

  auto store = [&](int i, int k, double r, const VectorJet<Dual>& w) {
    for (int a = 0; a < 3; ++a) {
      s.val[a](i, k) = w.v(a).v;
      s.rate[a](i, k) = w.v(a).d;
    }
    if (gradients) {
      const Mat3 G = eulerian_gradient(jet_values(w), mv[i], r);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) s.grad[3 * a + b](i, k) = G(a, b);
    }
  };

  for (int k = 0; k < n; ++k) {
    const Column& col = cols[k];
    if (col.kind == Column::Fluid) {
      const int idx = col.index;
      for (int iz = 0; iz < g.nz(); ++iz)
        for (int it = 0; it < g.nt(); ++it)
          for (int ir = 0; ir < g.nr(); ++ir) {
            const int i = g.node(ir, it, iz);
            store(i, k, g.r[ir], piola_forward(maps[i], lift_dual(d.fluid_table()[static_cast<std::size_t>(i) * nf + idx])));
          }
      for (int c = 0; c < C; ++c) {
        const auto w = piola_forward(tmap[c], lift_dual(d.fluid_trace_table()[static_cast<std::size_t>(c) * nf + idx]));
        for (int a = 0; a < 3; ++a) s.tr[a](c, k) = w.v(a).v;
      }
      s.flux_in(k) = d.fluid_flux(idx).in;
      s.flux_out(k) = d.fluid_flux(idx).out;
    } else {
      const FluxPolys<Dual> fp(lateral_flux(cyl.R, delta, constant_dual(col.xi)));
      const auto fc = flux_columns(fp, d.table(fp.kmax(), fp.pmax()));
      for (int iz = 0; iz < g.nz(); ++iz)
        for (int it = 0; it < g.nt(); ++it) {
          const int c = g.column(it, iz);
          for (int ir = 0; ir < g.nr(); ++ir) {
            const int i = g.node(ir, it, iz);
            const double r = g.r[ir];
            store(i, k, r, piola_forward(maps[i], flux_lift_jet(cyl.slip_profile(r), r, fc[c])));
          }
          const auto w = piola_forward(tmap[c], flux_lift_jet(cyl.slip_profile(cyl.R), cyl.R, fc[c]));
          for (int a = 0; a < 3; ++a) s.tr[a](c, k) = w.v(a).v;
          s.shell(c, k) = col.xi_jets[c].v;
        }
      // q_z = -(c' / r) Gbar with c(0) = 0, c(R) = 1: outflow through z = L is -2 pi Gbar(L)
      s.flux_out(k) = -2.0 * M_PI * flux_column_at(fp, 0.0, cyl.L).Gbar.v;
    }
  }
  return s;
}

VolumeField column_field(const Samples& s, int k) {
  VolumeField f(s.nodes);
  for (int i = 0; i < s.nodes; ++i) {
    for (int a = 0; a < 3; ++a) f[i].v(a) = s.val[a](i, k);
    if (s.gradients)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) f[i].grad(a, b) = s.grad[3 * a + b](i, k);
  }
  return f;
}

TraceField column_trace(const Samples& s, int k) {
  TraceField t(s.columns);
  for (int c = 0; c < s.columns; ++c) t[c] = Vec3(s.tr[0](c, k), s.tr[1](c, k), s.tr[2](c, k));
  return t;
}

std::vector<double> column_shell(const Samples& s, int k) {
  std::vector<double> x(s.columns);
  for (int c = 0; c < s.columns; ++c) x[c] = s.shell(c, k);
  return x;
}

ReferenceVelocity operator+(const ReferenceVelocity& x, const ReferenceVelocity& y) {
  ReferenceVelocity o;
  const Eigen::Index n = std::max(x.b.size(), y.b.size());
  o.b = Eigen::VectorXd::Zero(n);
  o.b.head(x.b.size()) += x.b;
  o.b.head(y.b.size()) += y.b;
  o.g = x.g;
  o.g += y.g;
  return o;
}

ReferenceVelocity operator*(double a, const ReferenceVelocity& x) {
  ReferenceVelocity o = x;
  o.b *= a;
  o.g *= a;
  return o;
}

ReferenceVelocity reference_velocity(const Discretization& d, const std::vector<Column>& cols, const Eigen::VectorXd& c,
                                     const TrigPoly<double>& delta) {
  ReferenceVelocity v;
  v.b = Eigen::VectorXd::Zero(d.fluid().size());
  TrigPoly<double> xi(0, 0, d.cylinder().L);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (cols[k].kind == Column::Fluid) {
      v.b(cols[k].index) += c(k);
    } else {
      TrigPoly<double> t = cols[k].xi;
      t *= c(k);
      xi += t;
    }
  }
  v.g = lateral_flux(d.cylinder().R, delta, xi);
  return v;
}

Eigen::MatrixXd velocity_values(const Discretization& d, const ReferenceVelocity& v, const TrigPoly<double>& delta) {
  const Cylinder& cyl = d.cylinder();
  const CylGrid& g = d.volume();
  const int nf = d.fluid().size();
  const FluxPolys<double> fp(v.g);
  const auto fc = flux_columns(fp, d.table(fp.kmax(), fp.pmax()));
  const auto dp = delta.eval_grid(d.table(delta.kmax(), delta.pmax()));
  Eigen::MatrixXd out(3, g.size());
  for (int iz = 0; iz < g.nz(); ++iz)
    for (int it = 0; it < g.nt(); ++it) {
      const int c = g.column(it, iz);
      for (int ir = 0; ir < g.nr(); ++ir) {
        const int i = g.node(ir, it, iz);
        const double r = g.r[ir];
        Vec3 phi = flux_lift_jet(cyl.slip_profile(r), r, fc[c]).v;
        for (int k = 0; k < v.b.size(); ++k)
          if (v.b(k) != 0.0) phi += v.b(k) * d.fluid_table()[static_cast<std::size_t>(i) * nf + k].v;
        const MapJet<double> m = map_jet(r, radial_jet(cyl.rho(r), dp[c]));
        out.col(i) = m.F * phi / m.detF;
      }
    }
  return out;
}

double reference_norm2(const Discretization& d, const ReferenceVelocity& v) {
  const CylGrid& g = d.volume();
  const Eigen::MatrixXd x = velocity_values(d, v, TrigPoly<double>(0, 0, d.cylinder().L));
  std::vector<double> t(g.size());
  for (int iz = 0; iz < g.nz(); ++iz)
    for (int it = 0; it < g.nt(); ++it)
      for (int ir = 0; ir < g.nr(); ++ir) {
        const int i = g.node(ir, it, iz);
        t[i] = g.ref_weight(ir, it, iz) * x.col(i).squaredNorm();
      }
  return pairwise_sum(t);
}

}  // namespace fsi
