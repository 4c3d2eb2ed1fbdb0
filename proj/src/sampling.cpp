#include "valironkit/sampling.hpp"

#include <array>
#include <cmath>
#include <random>

#include "valironkit/errors.hpp"
#include "valironkit/geometry.hpp"

namespace valironkit::sampling {
namespace {

constexpr std::array<int, 40> kPrimes = {2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
                                         47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
                                         109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};

double radical_inverse(std::uint64_t i, int base) {
  double f = 1.0;
  double r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

}  // namespace

QuasiRandom::QuasiRandom(int dim, std::uint64_t seed) {
  if (dim < 1 || dim > static_cast<int>(kPrimes.size())) throw ConfigError("quasi-random dimension out of range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  shift_.resize(dim);
  for (auto& s : shift_) s = seed == 0 ? 0.0 : u(rng);
}

std::vector<double> QuasiRandom::next() {
  std::vector<double> out(shift_.size());
  for (std::size_t d = 0; d < shift_.size(); ++d) {
    double x = radical_inverse(index_, kPrimes[d]) + shift_[d];
    out[d] = x - std::floor(x);
  }
  ++index_;
  return out;
}

cplx disk_point(double u, double v, double rmax) { return std::polar(rmax * std::sqrt(u), 2.0 * kPi * v); }

namespace {

int uniforms_per_point(DomainKind kind, int n) {
  if (kind == DomainKind::Disk || kind == DomainKind::HalfPlane) return 2;
  return 2 * n + 1;
}

}  // namespace

DomainSampler::DomainSampler(DomainKind kind, int n, std::uint64_t seed, double rmax, int points_per_draw)
    : kind_(kind),
      n_(n),
      rmax_(rmax),
      per_point_(uniforms_per_point(kind, n)),
      qr_(uniforms_per_point(kind, n) * points_per_draw, seed) {}

CVec DomainSampler::from_uniforms(const double* u) const {
  if (kind_ == DomainKind::Disk || kind_ == DomainKind::HalfPlane) {
    CVec p(1);
    const cplx z = disk_point(u[0], u[1], rmax_);
    p(0) = kind_ == DomainKind::Disk ? z : geometry::cayley(z);
    return p;
  }
  // Box-Muller on pairs for a direction, then a volume-uniform radius.
  CVec g(n_);
  for (int j = 0; j < n_; ++j) {
    const double a = std::max(u[2 * j], 1e-300);
    const double b = u[2 * j + 1];
    const double r = std::sqrt(-2.0 * std::log(a));
    g(j) = cplx(r * std::cos(2.0 * kPi * b), r * std::sin(2.0 * kPi * b));
  }
  const double norm = g.norm();
  const double radius = rmax_ * std::pow(u[2 * n_], 1.0 / (2.0 * n_));
  CVec z = norm > 0 ? CVec(g * (radius / norm)) : CVec(CVec::Zero(n_));
  if (kind_ == DomainKind::Ball) return z;
  CVec w(n_);
  const cplx one_minus = 1.0 - z(0);
  w(0) = kI * (1.0 + z(0)) / one_minus;
  for (int j = 1; j < n_; ++j) w(j) = z(j) / one_minus;
  return w;
}

CVec DomainSampler::next() {
  const auto u = qr_.next();
  return from_uniforms(u.data());
}

std::pair<CVec, CVec> DomainSampler::next_pair() {
  const auto u = qr_.next();
  if (qr_.dim() >= 2 * per_point_) return {from_uniforms(u.data()), from_uniforms(u.data() + per_point_)};
  const auto v = qr_.next();
  return {from_uniforms(u.data()), from_uniforms(v.data())};
}

}  // namespace valironkit::sampling
