#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "valironkit/types.hpp"

namespace valironkit::sampling {

/// Halton sequence with a seeded Cranley-Patterson rotation.
class QuasiRandom {
 public:
  QuasiRandom(int dim, std::uint64_t seed);
  std::vector<double> next();
  int dim() const { return static_cast<int>(shift_.size()); }

 private:
  std::vector<double> shift_;
  std::uint64_t index_ = 1;
};

/// Deterministic low-discrepancy points of a domain in native coordinates.
/// Bounded models are sampled up to radius rmax; unbounded models are the
/// Cayley images of those samples.
class DomainSampler {
 public:
  DomainSampler(DomainKind kind, int n, std::uint64_t seed, double rmax = 0.99, int points_per_draw = 1);

  CVec next();
  std::pair<CVec, CVec> next_pair();

 private:
  CVec from_uniforms(const double* u) const;

  DomainKind kind_;
  int n_;
  double rmax_;
  int per_point_;
  QuasiRandom qr_;
};

/// Area-uniform disk point from two uniforms.
cplx disk_point(double u, double v, double rmax);

}  // namespace valironkit::sampling
