#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "valironkit/corpus.hpp"
#include "valironkit/errors.hpp"
#include "valironkit/geometry.hpp"
#include "valironkit/valiron.hpp"

using namespace valironkit;
using namespace valironkit::valiron;
using vk_test::close;

namespace {

const MapDescriptor& affine() {
  static const auto m = corpus::halfplane_affine(2.0, kI);
  return m;
}
const MapDescriptor& sqrt_map() {
  static const auto m = corpus::halfplane_two_z_sqrt();
  return m;
}

double theta_at(const MapDescriptor& m, cplx z0) {
  return limit_data(dynamics::iterate_orbit(m, z0, 200)).theta;
}

}  // namespace

TEST_CASE("renormalizer examples") {
  dynamics::OrbitTrace t;
  t.domain = DomainKind::HalfPlane;
  t.points = {cplx(0.0, 3.0), cplx(1.0, 2.0)};
  const auto tau = renormalizers(t);
  CHECK(tau[0].apply(cplx(0.0, 3.0)) == kI);
  CHECK(close(tau[0].apply(cplx(6.0, 3.0)), cplx(2.0, 1.0), 0.0));
  CHECK(tau[1].apply(cplx(1.0, 2.0)) == kI);
  CHECK(close(tau[1].apply(cplx(3.0, 0.0)), cplx(1.0, 0.0), 0.0));
  CHECK(close(tau[1].inverse(tau[1].apply(cplx(0.7, 0.4))), cplx(0.7, 0.4), 1e-16));
}

TEST_CASE("tau_n o tau_{n+1}^{-1} tends to b_inf + A z") {
  const auto orbit = dynamics::iterate_orbit(sqrt_map(), kI, 200);
  const auto tau = renormalizers(orbit);
  const auto lim = limit_data(orbit);
  const cplx z(0.5, 1.5);
  const std::size_t n = tau.size() - 2;
  CHECK(std::abs(tau[n].apply(tau[n + 1].inverse(z)) - (lim.b_inf + lim.A * z)) < 1e-5);
}

TEST_CASE("limit data for 2z + i") {
  const auto d = limit_data(dynamics::iterate_orbit(affine(), kI, 200));
  CHECK(std::abs(d.A - 2.0) <= 1e-8);
  CHECK(std::abs(d.b_inf) <= 1e-8);
  CHECK(std::abs(d.theta - kPi / 2.0) <= 1e-8);
  CHECK_FALSE(d.flagged);
}

TEST_CASE("limit data for automorphisms: theta is the angle seen from the fixed point") {
  // tau = 3z + 1 fixes -1/2, so z_n + 1/2 = 3^n (z0 + 1/2).
  for (cplx z0 : {kI, cplx(2.0, 0.5), cplx(-3.0, 1.0)}) {
    const auto d = limit_data(dynamics::iterate_orbit(corpus::halfplane_affine(3.0, 1.0), z0, 200));
    CHECK(std::abs(d.theta - std::arg(z0 + 0.5)) <= 1e-10);
    CHECK(std::abs(d.b_inf - (d.A - 1.0) / std::tan(d.theta)) <= 1e-10);
  }
}

TEST_CASE("theta takes every value for an automorphism") {
  const double A = 3.0, b = 1.0;
  const cplx p = -b / (A - 1.0);
  for (int k = 1; k <= 7; ++k) {
    const double target = k * kPi / 8.0;
    CHECK(std::abs(theta_at(corpus::halfplane_affine(A, b), p + std::polar(1.0, target)) - target) <= 1e-6);
  }
}

TEST_CASE("limit data for 2z + sqrt z and the cot relation") {
  const auto d = limit_data(dynamics::iterate_orbit(sqrt_map(), kI, 200));
  CHECK(std::abs(d.A - 2.0) <= 1e-8);
  CHECK(std::abs(d.b_inf - (d.A - 1.0) / std::tan(d.theta)) <= 1e-3);
  CHECK(std::abs(d.theta - d.theta_direct) <= 1e-4);
}

TEST_CASE("limit data preconditions") {
  CHECK_THROWS_AS(limit_data(dynamics::iterate_orbit(affine(), kI, 5)), ConfigError);
  CHECK_THROWS_AS(limit_data(dynamics::iterate_orbit(corpus::disk_mobius(0.5), 0.0, 50)), ConfigError);
}

TEST_CASE("model rejects maps that are not hyperbolic at infinity") {
  CHECK_THROWS_AS(ValironModel(corpus::halfplane_affine(1.0, kI), kI), ConfigError);
  CHECK_THROWS_AS(ValironModel(corpus::disk_mobius(0.5), 0.0), ConfigError);
}

TEST_CASE("sigma for 2z + i is (z + i)/2") {
  const ValironModel model(affine(), kI);
  CHECK(close(sigma_evaluate(model, kI).value, kI, 1e-12));
  for (cplx z : {cplx(0.3, 0.2), cplx(-4.0, 7.0), cplx(100.0, 0.01)})
    CHECK(close(sigma_evaluate(model, z).value, (z + kI) / 2.0, 1e-9 * std::max(1.0, std::abs(z))));
  const auto s1 = sigma_evaluate(model, model.base_orbit().points[1]);
  CHECK(close(s1.value, model.b_inf() + kI * model.A(), 1e-9));
  CHECK(s1.n_used > 0);
  CHECK(model.residual_stats().max <= 1e-9);
}

TEST_CASE("sigma normalization and Schwarz bound") {
  for (const auto* m : {&affine(), &sqrt_map()}) {
    const ValironModel model(*m, kI);
    CHECK(close(model.sigma(kI).value, kI, 1e-8));
    for (const cplx& z : model.default_grid()) {
      const double lhs = geometry::halfplane_distance(kI, model.sigma(z).value);
      CHECK(lhs <= geometry::halfplane_distance(kI, z) + 1e-9);
    }
  }
}

TEST_CASE("functional equation residuals") {
  const ValironModel a(affine(), kI);
  CHECK(functional_residual(a, a.default_grid()).max <= 1e-9);
  const ValironModel dil(corpus::halfplane_affine(3.0, 0.0), cplx(1.0, 2.0));
  CHECK(functional_residual(dil, dil.default_grid()).max <= 1e-9);
  // tau_n(3^n z) = (3^n z - 3^n) / (2 3^n): any orbit of an automorphism gives an affine sigma.
  CHECK(close(dil.sigma(cplx(2.0, 1.0)).value, cplx(1.0, 1.0) / 2.0, 1e-12));
  const ValironModel s(sqrt_map(), kI);
  const auto r = functional_residual(s, s.default_grid());
  CHECK(r.points == 25);
  CHECK(r.max <= 1e-4);
  CHECK(r.mean <= r.max);
}

TEST_CASE("iterated functional equation sigma(z_n) = T^n(i)") {
  const ValironModel s(sqrt_map(), kI);
  cplx t = kI;
  for (int n = 0; n <= 20; ++n) {
    const cplx got = s.sigma(s.base_orbit().points[n]).value;
    CHECK(std::abs(got - t) <= 1e-6 * std::abs(t));
    t = s.A() * t + s.b_inf();
  }
}

TEST_CASE("psi_n tends to the identity and distances settle") {
  const ValironModel s(sqrt_map(), kI);
  const auto& orbit = s.base_orbit();
  const auto tau = renormalizers(orbit);
  const auto grid = s.default_grid();
  double prev = INFINITY;
  for (std::size_t n = 10; n + 1 < tau.size(); ++n) {
    double worst = 0.0;
    for (const cplx& z : grid) {
      const cplx psi = tau[n + 1].apply(maps::evaluate(s.map(), tau[n].inverse(z)));
      worst = std::max(worst, std::abs(psi - z));
    }
    CHECK(worst <= prev * (1.0 + 1e-9));
    prev = worst;
  }
  CHECK(prev <= 1e-3);

  for (const cplx& z : grid) {
    double last = INFINITY;
    for (int n = 0; n < static_cast<int>(tau.size()); ++n) {
      const double d = geometry::halfplane_distance(kI, s.sigma_n(z, n));
      CHECK(d <= last + 1e-12);
      last = d;
    }
  }
}

TEST_CASE("q_n converges with Im q_n -> A") {
  const auto orbit = dynamics::iterate_orbit(sqrt_map(), kI, 200);
  const auto tau = renormalizers(orbit);
  const std::size_t n = orbit.size() - 2;
  const cplx q = tau[n].apply(orbit.points[n + 1]);
  CHECK(std::abs(q.imag() - 2.0) <= 1e-4);
}

TEST_CASE("semiconformality") {
  for (const auto* m : {&affine(), &sqrt_map()}) {
    const auto sc = semiconformality_check(ValironModel(*m, kI));
    CHECK(sc.rays.size() == 3);
    CHECK(sc.pass());
  }
  CHECK(semiconformality_check(ValironModel(corpus::halfplane_affine(3.0, 1.0), kI)).max_deviation <= 1e-9);
}

TEST_CASE("angular derivative at infinity") {
  const ValironModel a(affine(), kI);
  const auto d = angular_derivative_at_infinity(a);
  REQUIRE(d.value);
  CHECK(close(d.L, cplx(0.0, 2.0), 1e-8));
  CHECK(std::abs(*d.value - 0.5) <= 1e-8);
  CHECK(angular_derivative_at_infinity(ValironModel(sqrt_map(), kI)).value);
  const ValironModel dil(corpus::halfplane_affine(3.0, 0.0), cplx(1.0, 2.0));
  CHECK(close(angular_derivative_at_infinity(dil).L, cplx(1.0, 2.0), 1e-12));
}

TEST_CASE("Bourdon-Shapiro hypothesis") {
  const auto s = bourdon_shapiro_check(sqrt_map(), 2.0, 1.0, 0.5, 10000);
  CHECK(s.pass);
  CHECK(s.samples == 10000);
  CHECK(bourdon_shapiro_check(affine(), 2.0, 1.0, 1.0, 1000).pass);
  // |z / log(z + 2i)| outgrows |z|^(1/2).
  const auto z = expr::variable(0);
  const MapDescriptor slow(DomainKind::HalfPlane, 1, expr::constant(2.0) * z + z / expr::log(z + cplx(0.0, 2.0)));
  CHECK_FALSE(bourdon_shapiro_check(slow, 2.0, 1.0, 0.5, 1000).pass);
}

TEST_CASE("Koenigs map") {
  const auto k = koenigs_map(corpus::disk_z_over_two_minus_z(), 0.0, 0.5);
  double worst = 0.0;
  for (int i = 0; i <= 10; ++i)
    for (int j = 0; j < 16; ++j) {
      const cplx z = std::polar(0.05 * i, 2.0 * kPi * j / 16.0);
      worst = std::max(worst, std::abs(k(z) - z / (1.0 - z)));
    }
  CHECK(worst <= 1e-8);
  CHECK(k.residual() <= 1e-8);
  CHECK(std::abs(k.normalized_derivative() - 1.0) <= 1e-8);

  const auto lin = koenigs_map(corpus::disk_linear(cplx(0.3, 0.4)), 0.0, cplx(0.3, 0.4));
  CHECK(close(lin(cplx(0.2, -0.1)), cplx(0.2, -0.1), 1e-15));

  const auto q = koenigs_map(corpus::disk_quadratic(), 0.0, 0.5);
  CHECK(q.residual() <= 1e-8);
  CHECK(std::abs(q.normalized_derivative() - 1.0) <= 1e-8);

  CHECK_THROWS_AS(koenigs_map(corpus::disk_linear(0.0), 0.0, 0.0), ConfigError);
  CHECK_THROWS_AS(koenigs_map(corpus::disk_linear(kI), 0.0, kI), ConfigError);
  CHECK_THROWS_AS(koenigs_map(corpus::disk_quadratic(), 0.3, 0.5), ConfigError);
}

TEST_CASE("Koenigs map about a fixed point away from the origin") {
  // Conjugate 0.5 z by the automorphism moving 0 to p.
  const cplx p(0.2, 0.3);
  const auto inner = expr::mobius(1.0, -p, -std::conj(p), 1.0);
  const auto m = MapDescriptor(DomainKind::Disk, 1,
                               expr::compose(expr::mobius(1.0, p, std::conj(p), 1.0), 0.5 * inner));
  const auto k = koenigs_map(m, p, 0.5);
  CHECK(k.residual() <= 1e-8);
  CHECK(std::abs(k.normalized_derivative() - 1.0) <= 1e-8);
  // The exact Koenigs map is the chart itself.
  const cplx w(-0.1, 0.4);
  CHECK(close(k(w), (w - p) / (1.0 - std::conj(p) * w), 1e-8));
}

TEST_CASE("Heins curve for 2z + i") {
  const ValironModel model(affine(), kI);
  const auto h = heins_curve(model, {0.5, 1.0, 1.5, 2.5, 0.01});
  for (int k = 0; k < 3; ++k) {
    const double t = h[k].t;
    CHECK(h[k].kind == HeinsKind::InteriorFixed);
    CHECK(close(h[k].value, cplx(0.0, t / (2.0 - t)), 1e-6));
    CHECK(std::abs(t * model.sigma(h[k].value).value - h[k].value) <= 1e-8);
  }
  CHECK(close(h[1].value, kI, 1e-8));
  CHECK(h[3].kind == HeinsKind::InfinityDw);
  CHECK(std::abs(h[4].value) < 0.01);
  CHECK_THROWS_AS(heins_curve(model, {0.0}), ConfigError);
}

TEST_CASE("uniqueness up to a positive multiple") {
  const auto u = uniqueness_cross_check(affine(), kI, 2.0 * kI);
  CHECK(close(u.mu, cplx(2.0 / 3.0), 1e-6));
  CHECK(u.deviation <= 1e-8);
  CHECK(u.pass());
  const auto same = uniqueness_cross_check(affine(), kI, kI);
  CHECK(close(same.mu, cplx(1.0), 1e-15));
  CHECK(same.deviation <= 1e-15);
  const auto s = uniqueness_cross_check(sqrt_map(), kI, cplx(1.0, 3.0));
  CHECK(s.deviation <= 1e-4);
  CHECK(s.pass());
}

TEST_CASE("theta is harmonic for 2z + sqrt z") {
  for (cplx c : {kI, cplx(1.0, 2.0)}) {
    double mean = 0.0;
    for (int k = 0; k < 64; ++k) mean += theta_at(sqrt_map(), c + std::polar(0.1, 2.0 * kPi * k / 64.0));
    mean /= 64.0;
    CHECK(std::abs(theta_at(sqrt_map(), c) - mean) <= 1e-3);
  }
}
