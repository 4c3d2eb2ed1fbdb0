#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "valironkit/types.hpp"

// Aitken delta-squared extrapolation with a convergence certificate.
//
// The accelerated table is built level by level (iterated Aitken). The
// reported estimate is the last entry of the level whose last two entries
// agree best; that difference is the certificate.

namespace valironkit::accel {

template <class T>
struct Limit {
  T value{};
  double residual = std::numeric_limits<double>::infinity();
  int level = 0;  // 0 = raw tail
  bool converged(double tol) const { return residual <= tol; }
};

namespace detail {

inline double mag(double x) { return std::abs(x); }
inline double mag(cplx x) { return std::abs(x); }

template <class T>
T aitken_step(const T& s0, const T& s1, const T& s2) {
  const T d0 = s1 - s0;
  const T d1 = s2 - s1;
  const T den = d1 - d0;
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * (mag(s0) + mag(s1) + mag(s2));
  if (mag(den) <= floor) return s2;
  const T out = s2 - d1 * d1 / den;
  if (!std::isfinite(mag(out))) return s2;
  return out;
}

}  // namespace detail

/// One Aitken sweep: t[j] = s[j+2] - (ds[j+1])^2 / d2s[j].
template <class T>
std::vector<T> aitken_transform(std::span<const T> s) {
  std::vector<T> out;
  if (s.size() < 3) return out;
  out.reserve(s.size() - 2);
  for (std::size_t j = 0; j + 2 < s.size(); ++j) out.push_back(detail::aitken_step(s[j], s[j + 1], s[j + 2]));
  return out;
}

/// Best limit estimate of s using up to max_levels iterated Aitken sweeps.
template <class T>
Limit<T> aitken_limit(std::span<const T> s, int max_levels = 3) {
  Limit<T> best;
  if (s.empty()) return best;
  if (s.size() == 1) {
    best.value = s[0];
    return best;
  }
  std::vector<T> level(s.begin(), s.end());
  for (int k = 0; k <= max_levels && level.size() >= 2; ++k) {
    const double r = detail::mag(level.back() - level[level.size() - 2]);
    // Prefer a deeper level only when it improves the certificate.
    if (k == 0 || r < best.residual) {
      best.value = level.back();
      best.residual = r;
      best.level = k;
    }
    level = aitken_transform<T>(level);
  }
  return best;
}

template <class T>
Limit<T> aitken_limit(const std::vector<T>& s, int max_levels = 3) {
  return aitken_limit<T>(std::span<const T>(s.data(), s.size()), max_levels);
}

}  // namespace valironkit::accel
