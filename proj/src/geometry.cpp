#include "valironkit/geometry.hpp"

#include <cmath>
#include <string>

#include "valironkit/errors.hpp"

namespace valironkit {

const char* to_string(DomainKind k) {
  switch (k) {
    case DomainKind::Disk:
      return "disk";
    case DomainKind::HalfPlane:
      return "halfplane";
    case DomainKind::Ball:
      return "ball";
    case DomainKind::Siegel:
      return "siegel";
  }
  return "?";
}

namespace geometry {

DiskPoint::DiskPoint(cplx value) : value_(value) {
  if (!(std::abs(value) < 1.0 - kBoundaryMargin))
    throw DomainError("disk point outside the open unit disk: |z| = " + std::to_string(std::abs(value)));
}

HalfPlanePoint::HalfPlanePoint(cplx value) : value_(value) {
  if (!(value.imag() > kBoundaryMargin) || !std::isfinite(value.real()))
    throw DomainError("half-plane point with Im z <= 0");
}

Horodisk::Horodisk(cplx base, double level) : base_(base), level_(level) {
  if (std::abs(std::abs(base) - 1.0) > 1e-12) throw ConfigError("horodisk base must have unit modulus");
  if (!(level > 0.0)) throw ConfigError("horodisk level must be positive");
}

double disk_distance(cplx z, cplx w) {
  const cplx den = 1.0 - std::conj(w) * z;
  return std::abs(z - w) / std::abs(den);
}

double halfplane_distance(cplx z, cplx w) { return std::abs(z - w) / std::abs(z - std::conj(w)); }

double rho_from_pseudo(double d) { return 2.0 * std::atanh(d); }

cplx cayley(cplx z) { return kI * (1.0 + z) / (1.0 - z); }

cplx inverse_cayley(cplx w) { return (w - kI) / (w + kI); }

double poisson_ratio(cplx zeta, cplx z) { return (1.0 - std::norm(z)) / std::norm(zeta - z); }

bool in_pseudo_disk(cplx center, double r, cplx z) { return disk_distance(center, z) < r; }

double pseudo_distance(DiskPoint z, DiskPoint w) { return disk_distance(z.value(), w.value()); }

double hyperbolic_distance(DiskPoint z, DiskPoint w) { return rho_from_pseudo(pseudo_distance(z, w)); }

DiskPoint disk_automorphism(DiskPoint a, cplx c, DiskPoint z) {
  if (std::abs(std::abs(c) - 1.0) > 1e-12) throw ConfigError("automorphism rotation factor must have unit modulus");
  const cplx av = a.value();
  const cplx zv = z.value();
  return DiskPoint(c * (zv - av) / (1.0 - std::conj(av) * zv));
}

HalfPlanePoint cayley_to_halfplane(DiskPoint z) {
  if (std::abs(1.0 - z.value()) <= kBoundaryMargin) throw DomainError("Cayley transform at z = 1");
  return HalfPlanePoint(cayley(z.value()));
}

DiskPoint cayley_to_disk(HalfPlanePoint w) { return DiskPoint(inverse_cayley(w.value())); }

bool horodisk_contains(const Horodisk& h, DiskPoint z) {
  return poisson_ratio(h.base(), z.value()) > 1.0 / h.level();
}

}  // namespace geometry
}  // namespace valironkit
