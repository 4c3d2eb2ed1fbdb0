#include <cmath>

#include "valironkit/errors.hpp"
#include "valironkit/parallel.hpp"
#include "valironkit/sampling.hpp"
#include "valironkit/valiron.hpp"

namespace valironkit::valiron {

std::string to_string(HeinsKind k) {
  switch (k) {
    case HeinsKind::InteriorFixed: return "interior-fixed";
    case HeinsKind::BoundaryDw: return "boundary-dw";
    case HeinsKind::InfinityDw: return "infinity-dw";
    case HeinsKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

HeinsSample follow(const ValironModel& model, double t, int max_steps) {
  HeinsSample s;
  s.t = t;
  cplx z = kI;
  try {
    for (int k = 0; k < max_steps; ++k) {
      const cplx w = t * model.sigma(z).value;
      if (std::abs(w) > 1e10) {
        s.kind = HeinsKind::InfinityDw;
        return s;
      }
      if (w.imag() < 1e-10) {
        s.kind = HeinsKind::BoundaryDw;
        s.value = w.real();
        return s;
      }
      if (std::abs(w - z) < 1e-12 * std::max(1.0, std::abs(w))) {
        s.kind = HeinsKind::InteriorFixed;
        s.value = w;
        return s;
      }
      z = w;
    }
  } catch (const ConvergenceError&) {
    // sigma does not settle along this orbit: report no verdict for this t.
  }
  s.kind = HeinsKind::Inconclusive;
  s.value = z;
  return s;
}

}  // namespace

std::vector<HeinsSample> heins_curve(const ValironModel& model, const std::vector<double>& t_grid, int max_steps) {
  for (double t : t_grid)
    if (!(t > 0.0)) throw ConfigError("Heins curve parameters must be positive");
  // t sigma maps H into H when sigma does; check sigma on samples.
  sampling::DomainSampler sampler(DomainKind::HalfPlane, 1, 0, 0.9);
  for (int k = 0; k < 16; ++k)
    if (!(model.sigma(sampler.next()(0)).value.imag() > 0.0)) throw NotSelfMapError("sigma leaves H on a sample");

  std::vector<HeinsSample> out(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t k) { out[k] = follow(model, t_grid[k], max_steps); });
  return out;
}

}  // namespace valironkit::valiron
