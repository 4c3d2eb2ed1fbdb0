#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "valironkit/ball.hpp"
#include "valironkit/charts.hpp"
#include "valironkit/corpus.hpp"
#include "valironkit/errors.hpp"
#include "valironkit/sampling.hpp"

using namespace valironkit;
using namespace valironkit::ball;

namespace {

CVec vec2(cplx a, cplx b) {
  CVec v(2);
  v << a, b;
  return v;
}

CMat rotation(double t) {
  CMat U(1, 1);
  U(0, 0) = std::polar(1.0, t);
  return U;
}

// A random point of the Siegel domain with height in a moderate range.
CVec siegel_sample(sampling::DomainSampler& s) { return s.next(); }

}  // namespace

TEST_CASE("points reject coordinates outside their domain") {
  CHECK_THROWS_AS(BallPoint(vec2(1.0, 0.0)), DomainError);
  CHECK_THROWS_AS(BallPoint(vec2(0.6, 0.8)), DomainError);
  CHECK_NOTHROW(BallPoint(vec2(0.6, 0.79)));
  CHECK_THROWS_AS(SiegelPoint(vec2(kI, 1.0)), DomainError);
  CHECK_NOTHROW(SiegelPoint(vec2(2.0 * kI, 1.0)));
  CHECK(SiegelPoint(vec2(cplx(3.0, 2.0), 1.0)).height() == doctest::Approx(1.0));
}

TEST_CASE("ball automorphisms send a to the origin") {
  const BallPoint a(vec2(cplx(0.3, -0.2), cplx(0.1, 0.4)));
  CHECK(ball_automorphism(a, a).coords().norm() < 1e-15);
  CHECK(vk_test::near(ball_automorphism(a, BallPoint(CVec::Zero(2))).coords(), -a.coords(), 1e-15));

  CVec half(1), zero(1);
  half << 0.5;
  zero << 0.0;
  CHECK(vk_test::close(ball_automorphism(BallPoint(half), BallPoint(zero)).coords()(0), -0.5, 1e-15));
  // gamma_0 is -z.
  const BallPoint z(vec2(0.2, cplx(0.0, 0.3)));
  CHECK(vk_test::near(ball_automorphism(BallPoint(CVec::Zero(2)), z).coords(), -z.coords(), 0.0));
}

TEST_CASE("Q quantity") {
  const BallPoint a(vec2(0.5, 0.0)), b(vec2(0.0, 0.5));
  CHECK(q_quantity(a, b) == doctest::Approx(16.0 / 9.0).epsilon(1e-15));
  CHECK(q_quantity(a, a) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q_quantity(BallPoint(CVec::Zero(2)), b) == doctest::Approx(1.0 / 0.75).epsilon(1e-15));
  const BallPoint c(vec2(cplx(0.1, 0.7), cplx(-0.3, 0.2)));
  CHECK(q_quantity(a, c) == doctest::Approx(q_quantity(c, a)).epsilon(1e-15));
}

TEST_CASE("Siegel translations preserve height") {
  const CVec b = vec2(kI, 1.0);
  const SiegelPoint w(iota(2));
  const SiegelPoint t = siegel_translation(b, w);
  CHECK(vk_test::near(t.coords(), vec2(2.0 * kI, 1.0), 1e-15));
  CHECK(t.height() == doctest::Approx(1.0));

  CHECK(vk_test::near(siegel_translation(vec2(1.0, 0.0), w).coords(), vec2(cplx(1.0, 1.0), 0.0), 0.0));
  CHECK_THROWS_AS(siegel_translation(vec2(2.0 * kI, 1.0), w), ConfigError);

  // h_b followed by h_{-b} (group inverse) returns the point.
  const CVec bb = vec2(cplx(0.7, 0.25), cplx(0.3, -0.4));
  const CVec binv = vec2(cplx(-0.7, 0.25), cplx(-0.3, 0.4));
  const SiegelPoint p(vec2(cplx(0.2, 3.0), cplx(0.5, 0.5)));
  const SiegelPoint back = siegel_translation(binv, siegel_translation(bb, p));
  CHECK(vk_test::near(back.coords(), p.coords(), 1e-14));

  sampling::DomainSampler s(DomainKind::Siegel, 3, 11, 0.9);
  const CVec b3 = [] {
    CVec v(3);
    v << cplx(-1.5, 0.29), cplx(0.5, 0.0), cplx(0.0, 0.2);
    return v;
  }();
  for (int k = 0; k < 1000; ++k) {
    const SiegelPoint q(siegel_sample(s));
    const double h = q.height();
    CHECK(std::abs(siegel_translation(b3, q).height() - h) <= 1e-10 * std::max(1.0, h));
  }
}

TEST_CASE("Siegel dilations scale height") {
  const SiegelPoint w(vec2(2.0 * kI, 1.0));
  const SiegelPoint d = siegel_dilation(4.0, w);
  CHECK(vk_test::near(d.coords(), vec2(8.0 * kI, 2.0), 1e-15));
  CHECK(d.height() == doctest::Approx(4.0));
  CHECK(vk_test::near(siegel_dilation(1.0, w).coords(), w.coords(), 0.0));
  CHECK(vk_test::near(siegel_dilation(4.0, SiegelPoint(iota(2))).coords(), vec2(4.0 * kI, 0.0), 0.0));
  CHECK_THROWS_AS(siegel_dilation(0.0, w), ConfigError);

  sampling::DomainSampler s(DomainKind::Siegel, 2, 5, 0.9);
  for (int k = 0; k < 1000; ++k) {
    const SiegelPoint q(siegel_sample(s));
    CHECK(std::abs(siegel_dilation(3.5, q).height() / (3.5 * q.height()) - 1.0) <= 1e-10);
  }
}

TEST_CASE("Psi automorphisms") {
  const CVec a = vec2(5.0 * kI, 1.0);
  const CMat I1 = CMat::Identity(1, 1);
  CHECK(vk_test::near(psi_automorphism(4.0, a, I1, SiegelPoint(iota(2))).coords(), a, 1e-12));

  // U = I and a = (A i, 0') give the dilation.
  const SiegelPoint w(vec2(cplx(0.3, 2.0), cplx(0.2, -0.1)));
  CHECK(vk_test::near(psi_automorphism(4.0, vec2(4.0 * kI, 0.0), I1, w).coords(), siegel_dilation(4.0, w).coords(),
                      1e-14));

  CHECK_THROWS_AS(psi_automorphism(4.0, vec2(3.0 * kI, 1.0), I1, w), ConfigError);
  CMat bad(1, 1);
  bad(0, 0) = 1.1;
  CHECK_THROWS_AS(psi_automorphism(4.0, a, bad, w), ConfigError);

  sampling::DomainSampler s(DomainKind::Siegel, 2, 9, 0.9);
  const CVec a2 = vec2(cplx(0.4, 3.0 + 0.25), cplx(0.3, 0.4));
  for (int k = 0; k < 1000; ++k) {
    const SiegelPoint q(siegel_sample(s));
    const double h = psi_automorphism(3.0, a2, rotation(0.9), q).height();
    CHECK(std::abs(h / (3.0 * q.height()) - 1.0) <= 1e-10);
  }
}

TEST_CASE("Psi boundary fixed point") {
  const CMat I1 = CMat::Identity(1, 1);
  const CVec c = psi_boundary_fixed_point(4.0, vec2(5.0 * kI, 1.0), I1);
  CHECK(vk_test::near(c, vec2(kI, -1.0), 1e-14));
  CHECK(vk_test::near(psi_boundary_fixed_point(4.0, vec2(4.0 * kI, 0.0), I1), CVec::Zero(2), 0.0));
  CHECK_THROWS_AS(psi_boundary_fixed_point(1.0, vec2(kI, 0.0), I1), SingularSystemError);

  const CVec a = vec2(cplx(0.4, 3.0 + 0.25), cplx(0.3, 0.4));
  const CMat U = rotation(0.9);
  const CVec f = psi_boundary_fixed_point(3.0, a, U);
  CHECK(std::abs(charts::height(f)) <= 1e-10);
  const CVec image = expr::evaluate(expr::psi(3.0, a, U), f);
  CHECK(vk_test::near(image, f, 1e-10));

  // Conjugating by the translation moving c to 0 yields the Psi_0 form.
  const CVec minus_c = vec2(cplx(-f(0).real(), f(0).imag()), -f(1));
  const CVec plus_c = f;
  sampling::DomainSampler s(DomainKind::Siegel, 2, 21, 0.8);
  for (int k = 0; k < 50; ++k) {
    const SiegelPoint q(siegel_sample(s));
    const SiegelPoint lhs =
        siegel_translation(minus_c, psi_automorphism(3.0, a, U, siegel_translation(plus_c, q)));
    CVec psi0 = q.coords();
    psi0(0) *= 3.0;
    psi0(1) = std::sqrt(3.0) * U(0, 0) * q.coords()(1);
    CHECK(vk_test::near(lhs.coords(), psi0, 1e-10 * std::max(1.0, psi0.norm())));
  }
}

TEST_CASE("ball Cayley transform") {
  CHECK(vk_test::near(ball_cayley(BallPoint(CVec::Zero(3))).coords(), iota(3), 0.0));
  sampling::DomainSampler s(DomainKind::Ball, 2, 4, 0.95);
  for (int k = 0; k < 1000; ++k) {
    const BallPoint z(s.next());
    const SiegelPoint w = ball_cayley(z);
    const CVec& zc = z.coords();
    const double L = std::abs(1.0 - zc(0)) / (1.0 - zc.squaredNorm());
    CHECK(std::abs(w.height() * L * std::abs(1.0 - zc(0)) - 1.0) <= 1e-10);
    CHECK(vk_test::near(ball_inverse_cayley(w).coords(), zc, 1e-12));
  }
  // N = 1 agrees with the disk Cayley map.
  CVec z(1);
  z << cplx(0.3, -0.4);
  CHECK(vk_test::close(ball_cayley(BallPoint(z)).coords()(0), kI * (1.0 + z(0)) / (1.0 - z(0)), 1e-15));
}

TEST_CASE("dilatation coefficient of ball maps") {
  SUBCASE("Psi_0 with A = 8 transported to the ball") {
    const auto m = maps::cayley_transport(corpus::siegel_psi0(8.0, rotation(0.3)));
    const auto d = ball_dilatation(m);
    CHECK(d.c == doctest::Approx(0.125).epsilon(1e-10));
    CHECK_FALSE(d.flagged);
    REQUIRE(d.iterate_c.size() == 2);
    CHECK(d.iterate_c[0] == doctest::Approx(1.0 / 64.0).epsilon(0.1));
    CHECK(d.iterate_law);
  }
  SUBCASE("one-variable hyperbolic automorphism") {
    const auto disk = corpus::disk_mobius(0.5);
    const maps::MapDescriptor m(DomainKind::Ball, 1, disk.expr());
    const auto d = ball_dilatation(m);
    CHECK(d.c == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
    CHECK_FALSE(d.flagged);
    CHECK(d.iterate_law);
  }
  SUBCASE("claim map with A = 8 in both charts") {
    const auto s = ball_dilatation(corpus::siegel_claim_map(8.0, 2));
    const auto b = ball_dilatation(maps::cayley_transport(corpus::siegel_claim_map(8.0, 2)));
    CHECK(s.c == doctest::Approx(0.125).epsilon(1e-8));
    CHECK(b.c == s.c);
    CHECK_FALSE(s.flagged);
    CHECK(s.iterate_law);
  }
}

TEST_CASE("Koranyi trace of a map below the threshold") {
  CHECK(kKoranyiThreshold == doctest::Approx(0.171572875253810).epsilon(1e-14));
  const auto m = maps::cayley_transport(corpus::siegel_claim_map(8.0, 2));
  const auto t = koranyi_trace(m, CVec::Zero(2), 200);
  REQUIRE(t.L.size() == 201);
  REQUIRE(t.S.size() == 200);
  for (std::size_t k = 0; k < t.L.size(); ++k) {
    CHECK(t.L[k] > 0.0);
    CHECK(t.height[k] > 0.0);
  }
  for (double s : t.S) CHECK(s > 0.0);
  CHECK(t.bounded);
  CHECK(t.argmax < 150);
  CHECK(t.julia_pass());
  CHECK(t.L[0] == doctest::Approx(1.0));
  CHECK(std::abs(t.z1.back() - 1.0) < 1e-100);
}

TEST_CASE("Koranyi trace matches the closed form for Psi_0") {
  // Psi_0^n(iota) = (A^n i, 0): L_n = 1 / 2 + A^-n / 2 and S_n = (A^n + 1) / (A^{n+1} + 1).
  const auto m = corpus::siegel_psi0(4.0, rotation(1.1));
  CVec w = iota(2);
  w(1) = 0.5;
  const auto t = koranyi_trace(m, iota(2), 30, 0.25);
  for (int n = 0; n < 30; ++n) {
    const double An = std::pow(4.0, n);
    CHECK(t.L[n] == doctest::Approx(0.5 * (1.0 + 1.0 / An)).epsilon(1e-13));
    CHECK(t.S[n] == doctest::Approx((An + 1.0) / (4.0 * An + 1.0)).epsilon(1e-13));
  }
  // Psi_0^n(w) = (A^n w1, A^{n/2} U^n w') for n <= 20.
  CVec v = vec2(cplx(0.3, 2.0), cplx(0.4, 0.2));
  CVec z = v;
  for (int n = 1; n <= 20; ++n) {
    z = maps::evaluate(m, z);
    CVec closed(2);
    closed << std::pow(4.0, n) * v(0), std::pow(2.0, n) * std::polar(1.0, 1.1 * n) * v(1);
    CHECK(vk_test::near(z, closed, 1e-9 * closed.norm()));
  }
}

TEST_CASE("Koranyi CSV") {
  const auto t = koranyi_trace(corpus::siegel_claim_map(8.0, 2), iota(2), 3);
  const std::string csv = t.to_csv();
  CHECK(csv.rfind("n,L,S,height,re_z1,im_z1\n0,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(csv.find("\n3,") != std::string::npos);
  CHECK(csv.find(",,") != std::string::npos);  // final S is blank
}

TEST_CASE("Koranyi trace rejects bad input") {
  const auto m = corpus::siegel_claim_map(8.0, 2);
  CHECK_THROWS_AS(koranyi_trace(m, vec2(kI, 2.0), 10), DomainError);
  CHECK_THROWS_AS(koranyi_trace(m, CVec::Zero(3), 10), ConfigError);
  CHECK_THROWS_AS(koranyi_trace(m, iota(2), 0), ConfigError);
  CHECK_THROWS_AS(koranyi_trace(corpus::disk_mobius(0.5), CVec::Zero(1), 10), ConfigError);
}

TEST_CASE("claim extension by iterates") {
  SUBCASE("c = 1/2 with N = 3") {
    const auto v = claim_extension_check(corpus::siegel_claim_map(2.0, 2), iota(2), 3);
    CHECK(v.c == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(v.c_power == doctest::Approx(0.125).epsilon(1e-8));
    CHECK(v.power_below_threshold);
    CHECK(v.iterate_bounded);
    CHECK(v.full_bounded);
    CHECK(v.interleave_excess <= 1e-10);
    CHECK(v.julia_pass);
    CHECK(v.bounded());
    CHECK(std::isfinite(v.sup_L));
  }
  SUBCASE("N = 1 reduces to the plain trace") {
    const auto m = maps::cayley_transport(corpus::siegel_claim_map(8.0, 2));
    const auto v = claim_extension_check(m, CVec::Zero(2), 1);
    const auto t = koranyi_trace(m, CVec::Zero(2), 200);
    CHECK(v.sup_L == t.sup);
    CHECK(v.bounded() == t.bounded);
  }
  SUBCASE("N too small for the threshold") {
    const auto v = claim_extension_check(corpus::siegel_claim_map(2.0, 2), iota(2), 2);
    CHECK_FALSE(v.power_below_threshold);
    CHECK_FALSE(v.bounded());
  }
}

TEST_CASE("Q and d contract under ball self-maps") {
  const auto maps_under_test = {maps::cayley_transport(corpus::siegel_claim_map(8.0, 2)),
                                maps::cayley_transport(corpus::siegel_psi0(4.0, rotation(0.5))), corpus::ball_half(2)};
  for (const auto& m : maps_under_test) {
    sampling::DomainSampler s(DomainKind::Ball, 2, 77, 0.97);
    double q_excess = -1.0, d_excess = -1.0;
    for (int k = 0; k < 10000; ++k) {
      const CVec a = s.next(), b = s.next();
      const CVec fa = maps::evaluate(m, a), fb = maps::evaluate(m, b);
      q_excess = std::max(q_excess, charts::q_ball(fa, fb) / charts::q_ball(a, b) - 1.0);
      d_excess = std::max(d_excess, charts::ball_automorphism(fa, fb).norm() - charts::ball_automorphism(a, b).norm());
    }
    CHECK(q_excess <= 1e-12);
    CHECK(d_excess <= 1e-12);
  }
}

TEST_CASE("interior attractors") {
  const auto a = interior_attractor(corpus::ball_half(2));
  REQUIRE(a.has_value());
  CHECK(a->norm() < 1e-14);
  CHECK_FALSE(interior_attractor(corpus::siegel_claim_map(8.0, 2)).has_value());
  CHECK_FALSE(interior_attractor(maps::cayley_transport(corpus::siegel_psi0(4.0, rotation(0.2)))).has_value());
}
