#include <cmath>
#include <vector>

#include "doctest.h"
#include "valironkit/accel.hpp"

using namespace valironkit;
using accel::aitken_limit;

TEST_CASE("Aitken is exact on a geometric tail") {
  std::vector<double> s;
  for (int n = 0; n < 12; ++n) s.push_back(2.0 + 3.0 * std::pow(0.7, n));
  const auto lim = aitken_limit(s);
  CHECK(std::abs(lim.value - 2.0) < 1e-13);
  CHECK(lim.converged(1e-12));
  CHECK(lim.level >= 1);
}

TEST_CASE("iterated Aitken removes two geometric modes") {
  std::vector<double> s;
  for (int n = 0; n < 40; ++n) s.push_back(2.0 + std::pow(2.0, -0.5 * n) + 0.3 * std::pow(2.0, -n));
  const auto lim = aitken_limit(s);
  CHECK(std::abs(lim.value - 2.0) < 1e-12);
}

TEST_CASE("complex geometric sequences") {
  std::vector<cplx> s;
  const cplx q(0.3, 0.4);
  cplx p = 1.0;
  for (int n = 0; n < 15; ++n, p *= q) s.push_back(cplx(1.0, 2.0) + cplx(0.5, -1.0) * p);
  const auto lim = aitken_limit(s);
  CHECK(std::abs(lim.value - cplx(1.0, 2.0)) < 1e-13);
}

TEST_CASE("already converged sequences are returned unchanged") {
  std::vector<double> s(10, 1.25);
  const auto lim = aitken_limit(s);
  CHECK(lim.value == 1.25);
  CHECK(lim.residual == 0.0);
}

TEST_CASE("an erratic sequence gets no certificate") {
  std::vector<double> s;
  for (int n = 0; n < 20; ++n) s.push_back(std::sin(1.0 * n * n));
  CHECK_FALSE(aitken_limit(s).converged(1e-6));
}

TEST_CASE("short inputs") {
  CHECK(aitken_limit(std::vector<double>{}).residual == INFINITY);
  CHECK(aitken_limit(std::vector<double>{3.0}).value == 3.0);
}
