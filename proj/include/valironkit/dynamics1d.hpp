#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valironkit/accel.hpp"
#include "valironkit/maps.hpp"

// One-variable dynamics: orbits, the Denjoy-Wolff point, the dilatation
// coefficient and the numerical forms of the Julia lemmas. Points are native
// coordinates of the map's domain (disk or half-plane).

namespace valironkit::dynamics {

using maps::MapDescriptor;

enum class Termination { Converged, Escaped, Cap };
std::string to_string(Termination t);

struct OrbitTrace {
  DomainKind domain = DomainKind::Disk;
  std::vector<cplx> points;    // z_0 .. z_M
  std::vector<double> steps;   // d(z_n, z_{n+1}), size M
  std::vector<cplx> ratios;    // z_{n+1}/z_n on H, (1 - z_{n+1})/(1 - z_n) on D; size M
  std::vector<double> args;    // Arg z_n (half-plane only)
  Termination termination = Termination::Cap;

  std::size_t size() const { return points.size(); }
  /// CSV with columns n, re, im, abs, arg, step_d, ratio_re, ratio_im.
  std::string to_csv() const;
};

/// escape_cap <= 0 selects the default: |z| >= 1e12 on H, |z| >= 1 - 1e-12 on D.
OrbitTrace iterate_orbit(const MapDescriptor& m, cplx z0, int max_n, double escape_cap = 0.0);

/// Default start of the orbit used by the classification: 0 on D, i on H.
cplx barycenter(DomainKind kind);

struct FixedPoint {
  cplx point;
  cplx multiplier;
};

/// Damped Newton on phi(z) - z from a 5x5 grid. nullopt means the search
/// failed and the orbit from the barycenter left every compact set tested.
/// Throws Inconclusive when Newton fails but the orbit stays bounded.
std::optional<FixedPoint> find_interior_fixed_point(const MapDescriptor& m, int max_n = 100000);

/// A boundary point stored in the disk model (zeta on the unit circle).
/// On H, at_infinity marks the point at infinity and x the real boundary point.
struct BoundaryPoint {
  cplx zeta = 1.0;
  bool at_infinity = false;
  double x = 0.0;
};

struct DenjoyWolff {
  BoundaryPoint point;
  double spread = 0.0;  // max angular spread of the limit over the starts
};

/// Orbits from five starts must agree on the limit within 1e-6 in angle.
DenjoyWolff denjoy_wolff(const MapDescriptor& m, int max_n = 100000);

struct Dilatation {
  double alpha = 1.0;             // the radial estimate
  accel::Limit<double> radial;
  accel::Limit<double> orbital;
  bool flagged = false;           // estimators disagree by more than 1e-4
  std::vector<std::string> notes;
};

Dilatation dilatation_coefficient(const MapDescriptor& m, const BoundaryPoint& dw, int orbit_n = 20000);

enum class Kind { Elliptic, Hyperbolic, Parabolic };
std::string to_string(Kind k);

struct Classification {
  Kind kind = Kind::Elliptic;
  std::optional<FixedPoint> fixed;
  std::optional<DenjoyWolff> dw;
  std::optional<Dilatation> dilatation;
  double alpha = 1.0;  // 1/A in the half-plane language; unused for elliptic maps
  std::vector<std::string> warnings;
};

inline constexpr double kParabolicThreshold = 1.0 - 1e-4;

Classification classify(const MapDescriptor& m, int max_n = 100000);

struct Confinement {
  double delta = 0.0;  // pi/2 - max |Arg z_n - pi/2|
  bool pass() const { return delta > 0.0; }
};

Confinement confinement_check(const OrbitTrace& trace);

struct JuliaReport {
  double max_violation = 0.0;  // relative shortfall of the Poisson-ratio inequality
  int samples = 0;
  bool pass() const { return max_violation <= 1e-9; }
};

/// Samples P(phi(z)) >= P(z) / alpha with P the Poisson ratio at dw.
JuliaReport julia_check(const MapDescriptor& m, const BoundaryPoint& dw, double alpha, int n_samples,
                        std::uint64_t seed = 0);

struct RayLimit {
  double A = 0.0;
  std::vector<accel::Limit<cplx>> rays;  // Arg z = pi/4, pi/2, 3pi/4
  double spread = 0.0;
  bool agree = false;                    // ray limits within 1e-6
};

/// Phi(z)/z along three rays at |z| = 2^k, k = 4..40, accelerated.
RayLimit julia_caratheodory_limit(const MapDescriptor& m);

/// Pseudo-hyperbolic distance in the map's own domain.
double native_distance(DomainKind kind, cplx z, cplx w);

}  // namespace valironkit::dynamics
