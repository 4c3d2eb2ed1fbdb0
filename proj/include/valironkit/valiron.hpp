#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valironkit/accel.hpp"
#include "valironkit/dynamics1d.hpp"

// Valiron's intertwining map for hyperbolic self-maps of H with
// Denjoy-Wolff point at infinity, built by Pommerenke's renormalization
//   sigma_n = tau_n o Phi_n,   tau_n(z) = (z - x_n) / y_n,   z_n = x_n + i y_n,
// so that sigma o Phi = A sigma + b_inf and sigma(z0) = i.

namespace valironkit::valiron {

using dynamics::OrbitTrace;
using maps::MapDescriptor;

/// tau(z) = (z - x) / y.
struct Renormalizer {
  double x = 0.0;
  double y = 1.0;
  cplx apply(cplx z) const { return (z - x) / y; }
  cplx inverse(cplx z) const { return x + z * y; }
};

std::vector<Renormalizer> renormalizers(const OrbitTrace& trace);

struct LimitData {
  double A = 0.0;
  double b_inf = 0.0;
  double theta = 0.0;         // Arg(b_inf + i (A - 1))
  double theta_direct = 0.0;  // accelerated Arg z_n
  bool flagged = false;       // the two thetas differ by more than 1e-4
  double residual_A = 0.0;
  double residual_b = 0.0;
};

/// Throws ConvergenceError when an acceleration certificate exceeds 1e-6.
LimitData limit_data(const OrbitTrace& trace);

struct SigmaValue {
  cplx value;
  int n_used = 0;
  double residual = 0.0;  // acceleration certificate
};

struct ResidualStats {
  double max = 0.0;
  double mean = 0.0;
  int points = 0;
};

class ValironModel {
 public:
  /// Builds the model from the orbit of z0 (stopped at |z| = 1e12 or max_n).
  /// Throws ConfigError unless the orbit exhibits a hyperbolic escape to infinity.
  ValironModel(const MapDescriptor& m, cplx z0, int max_n = 200);

  const MapDescriptor& map() const { return map_; }
  cplx z0() const { return z0_; }
  const OrbitTrace& base_orbit() const { return orbit_; }
  const LimitData& limits() const { return limits_; }
  double A() const { return limits_.A; }
  double b_inf() const { return limits_.b_inf; }
  double theta() const { return limits_.theta; }
  const ResidualStats& residual_stats() const { return stats_; }
  int n_max_used() const { return n_max_used_; }

  /// Accelerated limit of tau_n(Phi_n(z)); ConvergenceError when it does not settle.
  SigmaValue sigma(cplx z) const;
  /// sigma + b_inf / (A - 1), the normalization with sigma_hat o Phi = A sigma_hat.
  cplx sigma_hat(cplx z) const;
  /// Renormalized iterate sigma_n(z) for n within the base orbit.
  cplx sigma_n(cplx z, int n) const;

  /// 5 x 5 grid: hyperbolic radii 0.6..3 about z0, five angles.
  std::vector<cplx> default_grid() const;

 private:
  MapDescriptor map_;
  cplx z0_;
  OrbitTrace orbit_;
  std::vector<Renormalizer> tau_;
  LimitData limits_;
  ResidualStats stats_;
  int n_max_used_ = 0;
};

SigmaValue sigma_evaluate(const ValironModel& model, cplx z);

/// |sigma(Phi(z)) - A sigma(z) - b_inf| over the grid.
ResidualStats functional_residual(const ValironModel& model, const std::vector<cplx>& grid);

struct Semiconformality {
  std::vector<accel::Limit<double>> rays;  // Arg(sigma_hat(z)/z) at pi/4, pi/2, 3pi/4
  double max_deviation = 0.0;
  bool pass() const { return max_deviation <= 1e-3; }
};

Semiconformality semiconformality_check(const ValironModel& model);

struct AngularDerivative {
  std::optional<double> value;  // lim sigma(z_n)/z_n = sigma(z0)/L
  cplx L = 0.0;                 // lim z_n / A^n
  double residual = 0.0;
  std::string diagnostics;
};

AngularDerivative angular_derivative_at_infinity(const ValironModel& model);

struct BourdonShapiro {
  bool pass = true;
  double max_excess = 0.0;  // max over samples of |Gamma| / (M |z|^(1-eps)) - 1
  int samples = 0;
};

/// Samples |Phi(z) - A z| <= M |z|^(1-eps) on 10 rays, |z| log-spaced in [1, 1e10].
BourdonShapiro bourdon_shapiro_check(const MapDescriptor& m, double A, double M, double eps, int n_samples);

/// Koenigs linearization sigma o phi = lambda sigma of an elliptic map with an
/// attracting fixed point p, normalized by the local chart (z - p)/(1 - conj(p) z)
/// on D and (z - p)/(z - conj(p)) on H.
class KoenigsMap {
 public:
  KoenigsMap(const MapDescriptor& m, cplx fixed, cplx lambda);

  cplx operator()(cplx z) const;
  cplx lambda() const { return lambda_; }
  /// Max |sigma(phi(z)) - lambda sigma(z)| on a polar grid of radius 0.5 in the local chart.
  double residual() const { return residual_; }
  /// sigma'(p) divided by the chart derivative; 1 for an exact Koenigs map.
  cplx normalized_derivative() const { return derivative_; }

 private:
  cplx chart(cplx z) const;
  cplx chart_inverse(cplx u) const;

  MapDescriptor map_;
  cplx p_;
  cplx lambda_;
  double residual_ = 0.0;
  cplx derivative_ = 0.0;
};

KoenigsMap koenigs_map(const MapDescriptor& m, cplx fixed, cplx lambda);

enum class HeinsKind { InteriorFixed, BoundaryDw, InfinityDw, Inconclusive };
std::string to_string(HeinsKind k);

struct HeinsSample {
  double t = 0.0;
  HeinsKind kind = HeinsKind::Inconclusive;
  cplx value = 0.0;  // interior point, or real boundary point
};

/// Fate of the orbit of i under z -> t sigma(z) for every t in the grid.
std::vector<HeinsSample> heins_curve(const ValironModel& model, const std::vector<double>& t_grid,
                                     int max_steps = 10000);

struct Uniqueness {
  cplx mu = 0.0;
  double deviation = 0.0;
  bool pass() const { return deviation <= 1e-5 && std::abs(mu.imag()) <= 1e-8 && mu.real() > 0.0; }
};

/// Compares sigma_hat built from two base points: sigma_hat_alt ~ mu sigma_hat.
Uniqueness uniqueness_cross_check(const MapDescriptor& m, cplx z0, cplx z0_alt);

}  // namespace valironkit::valiron
