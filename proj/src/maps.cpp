#include "valironkit/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "valironkit/charts.hpp"
#include "valironkit/errors.hpp"
#include "valironkit/sampling.hpp"

namespace valironkit::maps {

using expr::Expr;
using expr::Op;

MapDescriptor::MapDescriptor(DomainKind domain, int n, Expr e) : domain_(domain), n_(n), expr_(std::move(e)) {
  if (n < 1) throw ConfigError("dimension N must be at least 1");
  if ((domain == DomainKind::Disk || domain == DomainKind::HalfPlane) && n != 1)
    throw ConfigError(std::string(to_string(domain)) + " maps have N = 1");
  if (expr::output_dim(expr_, n) != n)
    throw ConfigError("expression output has the wrong length for the declared domain");
  if (expr::check_charts(expr_, is_unbounded(domain)) != is_unbounded(domain))
    throw ConfigError("expression does not return to the chart of its domain");
}

MapDescriptor MapDescriptor::with_certificate(ValidationReport report) const {
  MapDescriptor out = *this;
  out.certificate_ = std::move(report);
  return out;
}

CVec evaluate(const MapDescriptor& m, const CVec& z) {
  if (z.size() != m.dim()) throw ConfigError("point has the wrong dimension");
  if (!charts::is_interior(m.domain(), z)) throw DomainError("evaluation point outside the domain");
  CVec w = expr::evaluate(m.expr(), z);
  const double v = charts::domain_violation(m.domain(), w);
  if (!(v <= kRangeTolerance)) throw DomainError("map value leaves the domain (violation " + std::to_string(v) + ")");
  return w;
}

cplx evaluate(const MapDescriptor& m, cplx z) { return evaluate(m, charts::scalar(z))(0); }

CMat derivative(const MapDescriptor& m, const CVec& z) {
  if (!charts::is_interior(m.domain(), z)) throw DomainError("derivative point outside the domain");
  const int n = m.dim();
  CMat jac(n, n);
  for (int k = 0; k < n; ++k) {
    CVec t = CVec::Zero(n);
    t(k) = 1.0;
    jac.col(k) = expr::evaluate_dual(m.expr(), z, t).tangent;
  }
  return jac;
}

cplx derivative(const MapDescriptor& m, cplx z) { return derivative(m, charts::scalar(z))(0, 0); }

ValidationReport validate_self_map(const MapDescriptor& m, int n_samples, std::uint64_t seed) {
  ValidationReport report;
  sampling::DomainSampler sampler(m.domain(), m.dim(), seed, 0.99, 2);
  const auto kind = m.domain();
  double worst = -std::numeric_limits<double>::infinity();
  auto range_check = [&](const CVec& z, const CVec& w) {
    const double v = charts::domain_violation(kind, w);
    if (v > worst) {
      worst = v;
      report.worst_point = z;
    }
    return v;
  };
  for (int s = 0; s < n_samples; ++s) {
    const auto [a, b] = sampler.next_pair();
    const CVec fa = expr::evaluate(m.expr(), a);
    const CVec fb = expr::evaluate(m.expr(), b);
    const double va = range_check(a, fa);
    const double vb = range_check(b, fb);
    ++report.samples_tested;
    if (va >= 0.0 || vb >= 0.0) continue;  // distance undefined outside the domain
    const double gap =
        charts::pseudo_distance(kind, fa, fb) - charts::pseudo_distance(kind, a, b);
    if (!std::isfinite(gap)) {
      report.schwarz_violation = std::numeric_limits<double>::infinity();
    } else {
      report.schwarz_violation = std::max(report.schwarz_violation, gap);
    }
  }
  report.max_boundary_violation = std::max(0.0, worst);
  return report;
}

MapDescriptor ensure_certified(const MapDescriptor& m) {
  if (m.certificate()) {
    if (!m.certificate()->pass()) throw NotSelfMapError("map failed self-map validation");
    return m;
  }
  auto report = validate_self_map(m, 256, 0);
  if (!report.pass())
    throw NotSelfMapError("map failed self-map validation (boundary " + std::to_string(report.max_boundary_violation) +
                          ", contraction " + std::to_string(report.schwarz_violation) + ")");
  return m.with_certificate(std::move(report));
}

MapDescriptor iterate_descriptor(const MapDescriptor& m, int n) {
  if (n < 0) throw ConfigError("iteration count must be non-negative");
  if (n == 0) return MapDescriptor(m.domain(), m.dim(), expr::identity());
  Expr e = m.expr();
  for (int k = 1; k < n; ++k) e = expr::compose(m.expr(), e);
  MapDescriptor out(m.domain(), m.dim(), e);
  if (m.certificate() && m.certificate()->pass()) out = out.with_certificate(*m.certificate());
  return out;
}

MapDescriptor cayley_transport(const MapDescriptor& m) {
  const auto target = [&] {
    switch (m.domain()) {
      case DomainKind::Disk:
        return DomainKind::HalfPlane;
      case DomainKind::HalfPlane:
        return DomainKind::Disk;
      case DomainKind::Ball:
        return DomainKind::Siegel;
      case DomainKind::Siegel:
        return DomainKind::Ball;
    }
    return DomainKind::Disk;
  }();
  // Undo an earlier transport exactly instead of stacking a second sandwich.
  const Op outer = is_unbounded(m.domain()) ? Op::Cayley : Op::InverseCayley;
  const Op inner = is_unbounded(m.domain()) ? Op::InverseCayley : Op::Cayley;
  auto bare = [](const Expr& x, Op op) { return x.op() == op && x.args()[0].op() == Op::Identity; };
  const Expr& e0 = m.expr();
  if (e0.op() == Op::Compose && bare(e0.args()[0], outer) && e0.args()[1].op() == Op::Compose &&
      bare(e0.args()[1].args()[1], inner))
    return MapDescriptor(target, m.dim(), e0.args()[1].args()[0]);

  Expr e = is_unbounded(m.domain())
               ? expr::compose(expr::inverse_cayley(), expr::compose(m.expr(), expr::cayley()))
               : expr::compose(expr::cayley(), expr::compose(m.expr(), expr::inverse_cayley()));
  return MapDescriptor(target, m.dim(), e);
}

namespace {

bool is_linear_term(const Expr& e, double A) {
  if (e.op() != Op::Multiply) return false;
  const Expr& l = e.args()[0];
  const Expr& r = e.args()[1];
  auto is_coeff = [&](const Expr& c) { return c.op() == Op::Constant && c.node().value == cplx(A, 0.0); };
  auto is_var = [](const Expr& v) { return v.op() == Op::Variable && v.node().index == 0; };
  return (is_coeff(l) && is_var(r)) || (is_var(l) && is_coeff(r));
}

}  // namespace

std::optional<Expr> remainder_after_linear(const MapDescriptor& m, double A) {
  if (m.dim() != 1) return std::nullopt;
  const Expr& e = m.expr();
  if (is_linear_term(e, A)) return expr::constant(0.0);
  if (e.op() != Op::Add) return std::nullopt;
  if (is_linear_term(e.args()[0], A)) return e.args()[1];
  if (is_linear_term(e.args()[1], A)) return e.args()[0];
  return std::nullopt;
}

}  // namespace valironkit::maps
