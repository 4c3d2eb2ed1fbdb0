#pragma once

#include "valironkit/types.hpp"

// Invariant geometry of the unit disk D and the upper half-plane H.
//
// Cayley convention used everywhere in the library:
//   C(z) = i (1 + z) / (1 - z),   C(0) = i,  C(1) = infinity.

namespace valironkit::geometry {

/// Points closer than this to the boundary are rejected by the typed wrappers.
inline constexpr double kBoundaryMargin = 1e-15;

class DiskPoint {
 public:
  explicit DiskPoint(cplx value);
  cplx value() const { return value_; }

 private:
  cplx value_;
};

class HalfPlanePoint {
 public:
  explicit HalfPlanePoint(cplx value);
  cplx value() const { return value_; }

 private:
  cplx value_;
};

/// H(t) = { z : (1 - |z|^2) / |zeta - z|^2 > 1/t } at the boundary point zeta.
class Horodisk {
 public:
  Horodisk(cplx base, double level);
  cplx base() const { return base_; }
  double level() const { return level_; }

 private:
  cplx base_;
  double level_;
};

double pseudo_distance(DiskPoint z, DiskPoint w);
double hyperbolic_distance(DiskPoint z, DiskPoint w);

/// gamma(z) = c (z - a) / (1 - conj(a) z), |c| = 1.
DiskPoint disk_automorphism(DiskPoint a, cplx c, DiskPoint z);

HalfPlanePoint cayley_to_halfplane(DiskPoint z);
DiskPoint cayley_to_disk(HalfPlanePoint w);

bool horodisk_contains(const Horodisk& h, DiskPoint z);

// Unchecked kernels shared with the dynamics code. They accept any interior
// point and do no validation.

double disk_distance(cplx z, cplx w);
/// |z - w| / |z - conj(w)|, the pseudo-hyperbolic distance in H.
double halfplane_distance(cplx z, cplx w);
/// log((1 + d) / (1 - d)).
double rho_from_pseudo(double d);

cplx cayley(cplx z);
cplx inverse_cayley(cplx w);

/// Poisson ratio (1 - |z|^2) / |zeta - z|^2.
double poisson_ratio(cplx zeta, cplx z);

/// Whether z lies in the pseudo-hyperbolic disk Delta(center, r).
bool in_pseudo_disk(cplx center, double r, cplx z);

}  // namespace valironkit::geometry
