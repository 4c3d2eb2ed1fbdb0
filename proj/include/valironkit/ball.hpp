#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valironkit/accel.hpp"
#include "valironkit/maps.hpp"

// Several variables: the unit ball B^N, the Siegel domain
// H^N = { Im w1 > |w'|^2 }, their automorphisms, the dilatation coefficient c
// at e1 and the Koranyi-region behaviour of orbits.

namespace valironkit::ball {

using maps::MapDescriptor;

class BallPoint {
 public:
  explicit BallPoint(CVec coords);  // rejects |z| >= 1 - 1e-15
  const CVec& coords() const { return z_; }
  int dim() const { return static_cast<int>(z_.size()); }

 private:
  CVec z_;
};

class SiegelPoint {
 public:
  explicit SiegelPoint(CVec coords);  // rejects height <= 0
  const CVec& coords() const { return w_; }
  cplx w1() const { return w_(0); }
  CVec wprime() const { return w_.tail(w_.size() - 1); }
  double height() const;
  int dim() const { return static_cast<int>(w_.size()); }

 private:
  CVec w_;
};

/// iota = (i, 0').
CVec iota(int n);

/// gamma_a, with gamma_0(z) = -z.
BallPoint ball_automorphism(const BallPoint& a, const BallPoint& z);
double q_quantity(const BallPoint& a, const BallPoint& b);

/// h_b(w) = (w1 + b1 + 2i <w', b'>, w' + b'); b must satisfy Im b1 = |b'|^2 within 1e-12.
SiegelPoint siegel_translation(const CVec& b, const SiegelPoint& w);
/// delta_A(w) = (A w1, sqrt(A) w').
SiegelPoint siegel_dilation(double A, const SiegelPoint& w);
/// Psi(z) = (A z1 + Re a1 + i |a'|^2 + 2i sqrt(A) <U z', a'>, sqrt(A) U z' + a').
SiegelPoint psi_automorphism(double A, const CVec& a, const CMat& U, const SiegelPoint& z);
/// The finite boundary fixed point of Psi from (I - sqrt(A) U) c' = a'.
CVec psi_boundary_fixed_point(double A, const CVec& a, const CMat& U);

SiegelPoint ball_cayley(const BallPoint& z);
BallPoint ball_inverse_cayley(const SiegelPoint& w);

/// Limit of the orbit of the barycenter (0 or iota) when it converges inside
/// the domain within max_n steps; nullopt otherwise. Coordinates are native.
std::optional<CVec> interior_attractor(const MapDescriptor& m, int max_n = 5000);

struct BallDilatation {
  double c = 1.0;  // radial estimate
  accel::Limit<double> radial;
  accel::Limit<double> orbital;
  bool flagged = false;  // estimators differ by more than 1e-4
  std::vector<double> iterate_c;  // c(phi_2), c(phi_3) when requested
  bool iterate_law = true;        // c(phi_n) = c^n within 10%
  std::vector<std::string> notes;
};

/// c = liminf (1 - |phi(z)|) / (1 - |z|) at e1 (infinity for Siegel maps).
BallDilatation ball_dilatation(const MapDescriptor& m, bool check_iterates = true);

struct KoranyiTrace {
  std::vector<double> L;       // |1 - z1| / (1 - |z|^2)
  std::vector<double> S;       // |(1 - z1_{n+1}) / (1 - z1_n)|
  std::vector<double> height;  // Siegel height of the Cayley image
  std::vector<cplx> z1;        // ball first coordinate
  double c = 1.0;
  double sup = 0.0;
  int argmax = 0;
  bool stable = false;   // |L_M - L_{M-25}| < 1e-6 L_M
  bool bounded = false;  // sup reached before the final quarter and L stable
  double julia_excess = 0.0;  // max S_n L_{n+1} / (c L_n) - 1
  bool julia_pass() const { return julia_excess <= 1e-9; }
  std::string to_csv() const;
};

/// Orbit of z0 (native coordinates of m) for n steps. c defaults to the
/// radial dilatation estimate. Ball maps that are Cayley transports of Siegel
/// maps are iterated in the Siegel chart.
KoranyiTrace koranyi_trace(const MapDescriptor& m, const CVec& z0, int n, std::optional<double> c = std::nullopt);

struct ClaimVerdict {
  double c = 1.0;
  double c_power = 1.0;  // c^N_power
  int N_power = 1;
  double sup_L = 0.0;          // over the full orbit
  bool power_below_threshold = false;
  bool iterate_bounded = false;  // Koranyi trace of phi_N
  bool full_bounded = false;     // full orbit
  double interleave_excess = 0.0;  // max d(z_{kN+j}, z_kN) - d(z_0, z_j)
  bool julia_pass = false;
  bool bounded() const {
    return power_below_threshold && iterate_bounded && full_bounded && interleave_excess <= 1e-10 && julia_pass;
  }
};

ClaimVerdict claim_extension_check(const MapDescriptor& m, const CVec& z0, int N_power, int n = 200);

}  // namespace valironkit::ball
