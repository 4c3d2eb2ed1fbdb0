#pragma once

#include <cmath>
#include <complex>

#include "valironkit/types.hpp"

namespace vk_test {

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }
inline bool close(valironkit::cplx a, valironkit::cplx b, double tol) { return std::abs(a - b) <= tol; }
inline bool near(const valironkit::CVec& a, const valironkit::CVec& b, double tol) {
  return a.size() == b.size() && (a - b).norm() <= tol;
}

}  // namespace vk_test
