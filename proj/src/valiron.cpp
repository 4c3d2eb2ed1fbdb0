#include "valironkit/valiron.hpp"

#include <cmath>
#include <cstdio>

#include "valironkit/charts.hpp"
#include "valironkit/errors.hpp"
#include "valironkit/geometry.hpp"
#include "valironkit/parallel.hpp"

namespace valironkit::valiron {

namespace {

template <class T>
void certify(const accel::Limit<T>& lim, const std::vector<T>& seq, double tol, const char* what) {
  if (lim.converged(tol)) return;
  const std::size_t n = seq.size();
  const cplx prev = n >= 2 ? cplx(seq[n - 2]) : cplx(0.0);
  const cplx last = n >= 1 ? cplx(seq[n - 1]) : cplx(0.0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s did not converge (certificate %.3g > %.3g)", what, lim.residual, tol);
  throw ConvergenceError(buf, prev, last);
}

}  // namespace

std::vector<Renormalizer> renormalizers(const OrbitTrace& trace) {
  std::vector<Renormalizer> out;
  out.reserve(trace.size());
  for (const cplx& z : trace.points) {
    if (!(z.imag() > 0.0)) throw DomainError("renormalizer needs Im z_n > 0");
    out.push_back({z.real(), z.imag()});
  }
  return out;
}

LimitData limit_data(const OrbitTrace& trace) {
  if (trace.domain != DomainKind::HalfPlane) throw ConfigError("limit data needs a half-plane orbit");
  if (trace.size() < 20) throw ConfigError("limit data needs an orbit of length at least 20");
  std::vector<double> yr, br, args;
  for (std::size_t n = 0; n + 1 < trace.size(); ++n) {
    const cplx a = trace.points[n], b = trace.points[n + 1];
    yr.push_back(b.imag() / a.imag());
    br.push_back((b.real() - a.real()) / a.imag());
  }
  for (const cplx& z : trace.points) args.push_back(std::arg(z));

  const auto A = accel::aitken_limit(yr);
  const auto b = accel::aitken_limit(br);
  const auto th = accel::aitken_limit(args);
  certify(A, yr, 1e-6, "y_{n+1}/y_n");
  certify(b, br, 1e-6 * std::max(1.0, std::abs(b.value)), "(x_{n+1}-x_n)/y_n");

  LimitData d;
  d.A = A.value;
  d.b_inf = b.value;
  d.residual_A = A.residual;
  d.residual_b = b.residual;
  d.theta = std::arg(cplx(d.b_inf, d.A - 1.0));
  d.theta_direct = th.value;
  d.flagged = std::abs(d.theta - d.theta_direct) > 1e-4;
  return d;
}

ValironModel::ValironModel(const MapDescriptor& m, cplx z0, int max_n)
    : map_(maps::ensure_certified(m)), z0_(z0) {
  if (m.domain() != DomainKind::HalfPlane) throw ConfigError("the Valiron model needs a half-plane map");
  orbit_ = dynamics::iterate_orbit(map_, z0, max_n);
  if (orbit_.termination != dynamics::Termination::Escaped || std::abs(orbit_.points.back()) < 1e6)
    throw ConfigError("the orbit does not escape to infinity within the budget; the map is not hyperbolic at infinity");
  tau_ = renormalizers(orbit_);
  limits_ = limit_data(orbit_);
  if (!(limits_.A > 1.0 + 1e-4)) throw ConfigError("A <= 1: the map is not hyperbolic");
  stats_ = functional_residual(*this, default_grid());
  for (const cplx& z : default_grid()) n_max_used_ = std::max(n_max_used_, sigma(z).n_used);
}

cplx ValironModel::sigma_n(cplx z, int n) const {
  if (n < 0 || n >= static_cast<int>(tau_.size())) throw ConfigError("renormalization index outside the base orbit");
  for (int k = 0; k < n; ++k) z = maps::evaluate(map_, z);
  return tau_[n].apply(z);
}

SigmaValue ValironModel::sigma(cplx z) const {
  if (!(z.imag() > 0.0) || !std::isfinite(std::abs(z))) throw DomainError("sigma needs a point of H");
  std::vector<cplx> seq;
  seq.reserve(tau_.size());
  cplx w = z;
  for (std::size_t n = 0; n < tau_.size(); ++n) {
    seq.push_back(tau_[n].apply(w));
    if (n + 1 < tau_.size()) w = maps::evaluate(map_, w);
  }
  const auto lim = accel::aitken_limit(seq);
  certify(lim, seq, 1e-6 * std::max(1.0, std::abs(lim.value)), "sigma_n(z)");
  return {lim.value, static_cast<int>(seq.size()) - 1, lim.residual};
}

cplx ValironModel::sigma_hat(cplx z) const { return sigma(z).value + limits_.b_inf / (limits_.A - 1.0); }

std::vector<cplx> ValironModel::default_grid() const {
  std::vector<cplx> grid;
  for (int k = 0; k < 5; ++k) {
    const double d = std::tanh(0.5 * 3.0 * (k + 1) / 5.0);
    for (int j = 0; j < 5; ++j) {
      const cplx w = geometry::cayley(std::polar(d, 2.0 * kPi * j / 5.0));
      grid.push_back(z0_.real() + z0_.imag() * w);
    }
  }
  return grid;
}

SigmaValue sigma_evaluate(const ValironModel& model, cplx z) { return model.sigma(z); }

ResidualStats functional_residual(const ValironModel& model, const std::vector<cplx>& grid) {
  std::vector<double> r(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    const cplx z = grid[k];
    const cplx lhs = model.sigma(maps::evaluate(model.map(), z)).value;
    r[k] = std::abs(lhs - model.A() * model.sigma(z).value - model.b_inf());
  });
  ResidualStats s;
  s.points = static_cast<int>(grid.size());
  for (double x : r) {
    s.max = std::max(s.max, x);
    s.mean += x;
  }
  if (!r.empty()) s.mean /= static_cast<double>(r.size());
  return s;
}

Semiconformality semiconformality_check(const ValironModel& model) {
  Semiconformality out;
  for (double theta : {kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0}) {
    std::vector<double> seq;
    for (int k = 3; k <= 20; ++k) {
      const cplx z = std::polar(std::ldexp(1.0, k), theta);
      seq.push_back(std::arg(model.sigma_hat(z) / z));
    }
    out.rays.push_back(accel::aitken_limit(seq));
    out.max_deviation = std::max(out.max_deviation, std::abs(out.rays.back().value));
  }
  return out;
}

AngularDerivative angular_derivative_at_infinity(const ValironModel& model) {
  AngularDerivative out;
  const auto& pts = model.base_orbit().points;
  std::vector<cplx> seq;
  for (std::size_t n = 0; n < pts.size(); ++n) seq.push_back(pts[n] / std::pow(model.A(), static_cast<double>(n)));
  const auto lim = accel::aitken_limit(seq);
  out.L = lim.value;
  out.residual = lim.residual;
  const double size = std::abs(lim.value);
  if (!std::isfinite(size) || size < 1e-12) {
    out.diagnostics = "z_n / A^n tends to 0 or infinity";
    return out;
  }
  if (!lim.converged(1e-6 * size)) {
    out.diagnostics = "z_n / A^n does not settle";
    return out;
  }
  const cplx ratio = cplx(model.b_inf() / (model.A() - 1.0), 1.0) / lim.value;
  if (std::abs(ratio.imag()) > 1e-6 * std::abs(ratio)) out.diagnostics = "limit ratio is not real";
  out.value = ratio.real();
  return out;
}

BourdonShapiro bourdon_shapiro_check(const MapDescriptor& m, double A, double M, double eps, int n_samples) {
  if (m.domain() != DomainKind::HalfPlane) throw ConfigError("Bourdon-Shapiro check needs a half-plane map");
  if (!(M > 0.0) || !(eps > 0.0) || n_samples < 20) throw ConfigError("need M > 0, eps > 0 and at least 20 samples");
  const auto gamma = maps::remainder_after_linear(m, A);
  const int per_ray = n_samples / 10;
  BourdonShapiro out;
  out.max_excess = -1.0;
  for (int j = 0; j < 10; ++j) {
    const double theta = kPi * (j + 0.5) / 10.0;
    for (int i = 0; i < per_ray; ++i) {
      const cplx z = std::polar(std::pow(10.0, 10.0 * i / (per_ray - 1)), theta);
      const CVec v = charts::scalar(z);
      const cplx g = gamma ? expr::evaluate(*gamma, v)(0) : expr::evaluate(m.expr(), v)(0) - A * z;
      out.max_excess = std::max(out.max_excess, std::abs(g) / (M * std::pow(std::abs(z), 1.0 - eps)) - 1.0);
      ++out.samples;
    }
  }
  out.pass = out.max_excess <= 1e-9;
  return out;
}

Uniqueness uniqueness_cross_check(const MapDescriptor& m, cplx z0, cplx z0_alt) {
  const ValironModel a(m, z0), b(m, z0_alt);
  const auto grid = a.default_grid();
  std::vector<cplx> sa(grid.size()), sb(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    sa[k] = a.sigma_hat(grid[k]);
    sb[k] = b.sigma_hat(grid[k]);
  });
  Uniqueness u;
  for (std::size_t k = 0; k < grid.size(); ++k) u.mu += sb[k] / sa[k];
  u.mu /= static_cast<double>(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) u.deviation = std::max(u.deviation, std::abs(sb[k] - u.mu * sa[k]));
  return u;
}

}  // namespace valironkit::valiron
