#include "valironkit/corpus.hpp"

#include <cmath>

namespace valironkit::corpus {

using namespace valironkit::expr;

MapDescriptor disk_mobius(double a) { return {DomainKind::Disk, 1, mobius(1.0, a, a, 1.0)}; }

MapDescriptor disk_z_over_two_minus_z() { return {DomainKind::Disk, 1, mobius(1.0, 0.0, -1.0, 2.0)}; }

MapDescriptor disk_linear(cplx lambda) { return {DomainKind::Disk, 1, lambda * variable(0)}; }

MapDescriptor disk_quadratic() {
  const auto z = variable(0);
  return {DomainKind::Disk, 1, 0.5 * z + 0.1 * pow(z, 2)};
}

MapDescriptor halfplane_affine(double A, cplx b) {
  return {DomainKind::HalfPlane, 1, constant(A) * variable(0) + b};
}

MapDescriptor halfplane_affine_sqrt(double A) {
  const auto z = variable(0);
  return {DomainKind::HalfPlane, 1, constant(A) * z + sqrt(z)};
}

MapDescriptor halfplane_two_z_sqrt() { return halfplane_affine_sqrt(2.0); }

MapDescriptor halfplane_log_perturbation() {
  const auto z = variable(0);
  return {DomainKind::HalfPlane, 1, constant(2.0) * z + kI * log(z + kI)};
}

MapDescriptor siegel_claim_map(double A, int n) {
  std::vector<Expr> parts;
  const auto w1 = variable(0);
  parts.push_back(constant(A) * w1 + sqrt(w1));
  for (int j = 1; j < n; ++j) parts.push_back(std::sqrt(A) * variable(j));
  return {DomainKind::Siegel, n, vector(std::move(parts))};
}

MapDescriptor siegel_psi0(double A, const CMat& U) {
  return {DomainKind::Siegel, static_cast<int>(U.rows()) + 1, unitary(U, siegel_dilation(A))};
}

MapDescriptor siegel_psi(double A, const CVec& a, const CMat& U) {
  return {DomainKind::Siegel, static_cast<int>(a.size()), psi(A, a, U)};
}

MapDescriptor ball_half(int n) {
  std::vector<Expr> parts;
  for (int j = 0; j < n; ++j) parts.push_back(0.5 * variable(j));
  return {DomainKind::Ball, n, vector(std::move(parts))};
}

std::vector<Entry> default_corpus() {
  CMat rot(1, 1);
  rot(0, 0) = std::polar(1.0, 0.7);
  CVec a(2);
  a << cplx(0.0, 5.0), cplx(1.0, 0.0);
  return {
      {"disk_mobius_0.5", disk_mobius(0.5)},
      {"disk_z_over_2_minus_z", disk_z_over_two_minus_z()},
      {"disk_rotation_i", disk_linear(kI)},
      {"disk_quadratic", disk_quadratic()},
      {"halfplane_2z_plus_i", halfplane_affine(2.0, kI)},
      {"halfplane_2z_plus_sqrt", halfplane_two_z_sqrt()},
      {"halfplane_z_plus_i", halfplane_affine(1.0, kI)},
      {"halfplane_3z_plus_1", halfplane_affine(3.0, 1.0)},
      {"siegel_claim_A8", siegel_claim_map(8.0, 2)},
      {"siegel_claim_A2", siegel_claim_map(2.0, 2)},
      {"siegel_psi0_A4_rot", siegel_psi0(4.0, rot)},
      {"siegel_psi_A4", siegel_psi(4.0, a, CMat::Identity(1, 1))},
      {"ball_claim_A8", maps::cayley_transport(siegel_claim_map(8.0, 2))},
      {"ball_half", ball_half(2)},
  };
}

}  // namespace valironkit::corpus
