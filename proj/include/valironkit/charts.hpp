#pragma once

#include "valironkit/types.hpp"

// Numerical kernels shared by the one- and several-variable code: domain
// membership, the Cayley transform of the ball onto the Siegel domain, the
// ball automorphisms gamma_a and the invariant quantities d and Q, each in
// the chart where it is best conditioned.

namespace valironkit::charts {

/// Positive when w is outside the domain; infinity for non-finite input.
double domain_violation(DomainKind kind, const CVec& w);
bool is_interior(DomainKind kind, const CVec& w);

/// (i (1 + z1) / (1 - z1), z' / (1 - z1)). For N = 1 this is the disk Cayley map.
CVec ball_cayley(const CVec& z);
CVec ball_inverse_cayley(const CVec& w);

/// gamma_a(z) = (P_a z + s_a Q_a z - a) / (1 - (z, a)), s_a = sqrt(1 - |a|^2).
/// gamma_0 is taken to be -z, which keeps gamma_a(0) = -a for every a.
CVec ball_automorphism(const CVec& a, const CVec& z);

/// (z, w) = sum z_j conj(w_j).
cplx ball_inner(const CVec& z, const CVec& w);

/// Q(a, b) = |1 - (a, b)|^2 / ((1 - |a|^2)(1 - |b|^2)).
double q_ball(const CVec& a, const CVec& b);
/// Q of the ball preimages, computed from Siegel coordinates:
/// |u1 - conj(v1) - 2i <u', v'>|^2 / (4 h(u) h(v)).
double q_siegel(const CVec& u, const CVec& v);
double q_quantity(DomainKind kind, const CVec& a, const CVec& b);

/// Pseudo-hyperbolic distance between two points of the given domain.
double pseudo_distance(DomainKind kind, const CVec& a, const CVec& b);

/// Siegel height Im w1 - |w'|^2.
double height(const CVec& w);

/// 1 - |z|^2 of the bounded-model point, computed without cancellation when
/// the native chart is unbounded (4 h / |w1 + i|^2).
double defect(DomainKind kind, const CVec& native);
/// 1 - z1 of the bounded-model point (2i / (w1 + i) for unbounded charts).
cplx one_minus_first(DomainKind kind, const CVec& native);
/// Bounded-model coordinates of a native point.
CVec to_bounded(DomainKind kind, const CVec& native);

inline CVec scalar(cplx z) {
  CVec v(1);
  v(0) = z;
  return v;
}

}  // namespace valironkit::charts
