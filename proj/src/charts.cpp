#include "valironkit/charts.hpp"

#include <cmath>
#include <limits>

#include "valironkit/geometry.hpp"

namespace valironkit::charts {

double height(const CVec& w) { return w(0).imag() - w.tail(w.size() - 1).squaredNorm(); }

double domain_violation(DomainKind kind, const CVec& w) {
  if (!w.allFinite()) return std::numeric_limits<double>::infinity();
  switch (kind) {
    case DomainKind::Disk:
    case DomainKind::Ball:
      return w.norm() - 1.0;
    case DomainKind::HalfPlane:
      return -w(0).imag();
    case DomainKind::Siegel:
      return -height(w);
  }
  return std::numeric_limits<double>::infinity();
}

bool is_interior(DomainKind kind, const CVec& w) { return domain_violation(kind, w) < 0.0; }

cplx ball_inner(const CVec& z, const CVec& w) { return (w.adjoint() * z)(0); }

CVec ball_cayley(const CVec& z) {
  CVec w(z.size());
  const cplx om = 1.0 - z(0);
  w(0) = kI * (1.0 + z(0)) / om;
  w.tail(z.size() - 1) = z.tail(z.size() - 1) / om;
  return w;
}

CVec ball_inverse_cayley(const CVec& w) {
  CVec z(w.size());
  const cplx den = w(0) + kI;
  z(0) = (w(0) - kI) / den;
  z.tail(w.size() - 1) = w.tail(w.size() - 1) * (2.0 * kI / den);
  return z;
}

CVec ball_automorphism(const CVec& a, const CVec& z) {
  const double aa = a.squaredNorm();
  if (aa == 0.0) return -z;
  const cplx za = ball_inner(z, a);
  const CVec p = a * (za / aa);
  const CVec q = z - p;
  const double s = std::sqrt(1.0 - aa);
  return (p + s * q - a) / (1.0 - za);
}

double q_ball(const CVec& a, const CVec& b) {
  return std::norm(1.0 - ball_inner(a, b)) / ((1.0 - a.squaredNorm()) * (1.0 - b.squaredNorm()));
}

double q_siegel(const CVec& u, const CVec& v) {
  const auto m = u.size() - 1;
  const cplx cross = ball_inner(u.tail(m), v.tail(m));
  // Scaled so that orbit points far out towards infinity do not overflow.
  const double r = std::abs(u(0) - std::conj(v(0)) - 2.0 * kI * cross) / (2.0 * std::sqrt(height(u)) * std::sqrt(height(v)));
  return r * r;
}

double q_quantity(DomainKind kind, const CVec& a, const CVec& b) {
  return is_unbounded(kind) ? q_siegel(a, b) : q_ball(a, b);
}

double pseudo_distance(DomainKind kind, const CVec& a, const CVec& b) {
  switch (kind) {
    case DomainKind::Disk:
      return geometry::disk_distance(a(0), b(0));
    case DomainKind::HalfPlane:
      return geometry::halfplane_distance(a(0), b(0));
    case DomainKind::Ball:
      return ball_automorphism(a, b).norm();
    case DomainKind::Siegel: {
      const double q = q_siegel(a, b);
      return std::sqrt(std::max(0.0, (q - 1.0) / q));
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double defect(DomainKind kind, const CVec& native) {
  if (is_unbounded(kind)) {
    const double r = std::abs(native(0) + kI);
    return 4.0 * (height(native) / r) / r;
  }
  return 1.0 - native.squaredNorm();
}

cplx one_minus_first(DomainKind kind, const CVec& native) {
  if (is_unbounded(kind)) return 2.0 * kI / (native(0) + kI);
  return 1.0 - native(0);
}

CVec to_bounded(DomainKind kind, const CVec& native) {
  return is_unbounded(kind) ? ball_inverse_cayley(native) : native;
}

}  // namespace valironkit::charts
