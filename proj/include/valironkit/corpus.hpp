#pragma once

#include <string>
#include <vector>

#include "valironkit/maps.hpp"

// Built-in test maps with known dynamics.

namespace valironkit::corpus {

using maps::MapDescriptor;

/// (z + a) / (1 + a z) on D: hyperbolic automorphism, Denjoy-Wolff point 1,
/// dilatation (1 - a) / (1 + a).
MapDescriptor disk_mobius(double a);
/// z / (2 - z) on D: fixes 0 with multiplier 1/2.
MapDescriptor disk_z_over_two_minus_z();
/// lambda z on D.
MapDescriptor disk_linear(cplx lambda);
/// 0.5 z + 0.1 z^2 on D.
MapDescriptor disk_quadratic();

/// A z + b on H (b may be complex with Im b >= 0).
MapDescriptor halfplane_affine(double A, cplx b);
/// 2 z + sqrt(z) on H.
MapDescriptor halfplane_two_z_sqrt();
/// A z + sqrt(z) on H.
MapDescriptor halfplane_affine_sqrt(double A);
/// 2 z + i log(z + i): logarithmic perturbation; Im i log(z + i) = log|z + i| > 0.
MapDescriptor halfplane_log_perturbation();

/// (A w1 + sqrt(w1), sqrt(A) w') on the Siegel domain.
MapDescriptor siegel_claim_map(double A, int n);
/// Psi_0(w) = (A w1, sqrt(A) U w').
MapDescriptor siegel_psi0(double A, const CMat& U);
/// Psi with parameters (A, a, U).
MapDescriptor siegel_psi(double A, const CVec& a, const CMat& U);
/// z / 2 on the ball: elliptic, fixes 0.
MapDescriptor ball_half(int n);

struct Entry {
  std::string name;
  MapDescriptor map;
};

/// Maps exercised by the invariant suite.
std::vector<Entry> default_corpus();

}  // namespace valironkit::corpus
