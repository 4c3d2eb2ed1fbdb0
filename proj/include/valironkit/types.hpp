#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace valironkit {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

// 3 - sqrt(8), the dilatation threshold of the Koranyi confinement claim.
inline constexpr double kKoranyiThreshold = 3.0 - 2.0 * std::numbers::sqrt2;

enum class DomainKind { Disk, HalfPlane, Ball, Siegel };

/// Bounded models (disk, ball) versus their unbounded Cayley images.
inline bool is_unbounded(DomainKind k) { return k == DomainKind::HalfPlane || k == DomainKind::Siegel; }

const char* to_string(DomainKind k);

}  // namespace valironkit
