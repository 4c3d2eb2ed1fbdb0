#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "valironkit/expr.hpp"
#include "valironkit/types.hpp"

namespace valironkit::maps {

/// Outcome of the sampled self-map test. A pass certifies the tested
/// behaviour only; it is not a proof.
struct ValidationReport {
  int samples_tested = 0;
  double max_boundary_violation = 0.0;
  double schwarz_violation = 0.0;
  CVec worst_point;  // sample with the largest boundary violation
  bool pass() const { return max_boundary_violation <= kTolerance && schwarz_violation <= kTolerance; }

  static constexpr double kTolerance = 1e-10;
};

/// An analytic self-map of D, H, B^N or the Siegel domain given as an
/// expression tree. Immutable.
class MapDescriptor {
 public:
  MapDescriptor(DomainKind domain, int n, expr::Expr e);

  DomainKind domain() const { return domain_; }
  int dim() const { return n_; }
  const expr::Expr& expr() const { return expr_; }

  const std::optional<ValidationReport>& certificate() const { return certificate_; }
  MapDescriptor with_certificate(ValidationReport report) const;

 private:
  DomainKind domain_;
  int n_;
  expr::Expr expr_;
  std::optional<ValidationReport> certificate_;
};

/// Result leaving the domain by more than this raises DomainError.
inline constexpr double kRangeTolerance = 1e-10;

CVec evaluate(const MapDescriptor& m, const CVec& z);
cplx evaluate(const MapDescriptor& m, cplx z);

/// Jacobian by forward-mode differentiation of the tree.
CMat derivative(const MapDescriptor& m, const CVec& z);
cplx derivative(const MapDescriptor& m, cplx z);

ValidationReport validate_self_map(const MapDescriptor& m, int n_samples, std::uint64_t seed);

/// Returns m when it already carries a certificate, otherwise validates it
/// with a default budget. Throws NotSelfMapError on a failed verdict.
MapDescriptor ensure_certified(const MapDescriptor& m);

/// n-fold composition; n = 0 is the identity.
MapDescriptor iterate_descriptor(const MapDescriptor& m, int n);

/// Conjugate by the Cayley transform: a disk/ball map becomes the
/// corresponding half-plane/Siegel map and vice versa.
MapDescriptor cayley_transport(const MapDescriptor& m);

/// Gamma = Phi - A z read off the tree when Phi = A z + Gamma (or Gamma + A z)
/// at the top level; nullopt when the tree has a different shape.
std::optional<expr::Expr> remainder_after_linear(const MapDescriptor& m, double A);

// JSON descriptor schema:
//   {"domain": "disk"|"halfplane"|"ball"|"siegel", "N": n, "expr": node}
//   node = {"op": name, "args": [node...], "params": {...}}
MapDescriptor from_json(const nlohmann::json& j);
nlohmann::json to_json(const MapDescriptor& m);
nlohmann::json complex_to_json(cplx z);
cplx complex_from_json(const nlohmann::json& j);

}  // namespace valironkit::maps
