#include <cmath>

#include "valironkit/errors.hpp"
#include "valironkit/valiron.hpp"

namespace valironkit::valiron {

KoenigsMap::KoenigsMap(const MapDescriptor& m, cplx fixed, cplx lambda)
    : map_(maps::ensure_certified(m)), p_(fixed), lambda_(lambda) {
  if (m.domain() != DomainKind::Disk && m.domain() != DomainKind::HalfPlane)
    throw ConfigError("Koenigs map needs a disk or half-plane map");
  if (lambda == 0.0) throw ConfigError("superattracting fixed point: the Koenigs map is not defined");
  if (!(std::abs(lambda) < 1.0)) throw ConfigError("Koenigs map needs |lambda| < 1");
  if (std::abs(maps::evaluate(map_, p_) - p_) > 1e-10 * std::max(1.0, std::abs(p_)))
    throw ConfigError("the given point is not fixed by the map");

  // sigma'(p) by the Cauchy integral in the local chart.
  const int n = 64;
  const double r = 0.25;
  cplx sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const cplx u = std::polar(r, 2.0 * kPi * k / n);
    sum += (*this)(chart_inverse(u)) / u;
  }
  derivative_ = sum / static_cast<double>(n);

  for (int i = 1; i <= 5; ++i)
    for (int k = 0; k < 16; ++k) {
      const cplx z = chart_inverse(std::polar(0.1 * i, 2.0 * kPi * k / 16.0));
      residual_ = std::max(residual_, std::abs((*this)(maps::evaluate(map_, z)) - lambda_ * (*this)(z)));
    }
}

cplx KoenigsMap::chart(cplx z) const {
  if (map_.domain() == DomainKind::Disk) return (z - p_) / (1.0 - std::conj(p_) * z);
  return (z - p_) / (z - std::conj(p_));
}

cplx KoenigsMap::chart_inverse(cplx u) const {
  if (map_.domain() == DomainKind::Disk) return (u + p_) / (1.0 + std::conj(p_) * u);
  return (p_ - u * std::conj(p_)) / (1.0 - u);
}

cplx KoenigsMap::operator()(cplx z) const {
  // chart(w) carries an absolute rounding error of about eps |p|, amplified by
  // lambda^-n; stop once it is small enough for Aitken to finish the job.
  const double floor = p_ == 0.0 ? 0.0 : 1e-5;
  std::vector<cplx> seq;
  cplx w = z, scale = 1.0;
  for (int n = 0; n < 2000; ++n) {
    const cplx u = chart(w);
    seq.push_back(scale * u);
    const std::size_t k = seq.size();
    if (k >= 4 && std::abs(seq[k - 1] - seq[k - 2]) <= 1e-15 * std::abs(seq[k - 1])) break;
    if (std::abs(u) <= floor || !std::isfinite(std::abs(scale / lambda_))) break;
    w = maps::evaluate(map_, w);
    scale /= lambda_;
  }
  return accel::aitken_limit(seq).value;
}

KoenigsMap koenigs_map(const MapDescriptor& m, cplx fixed, cplx lambda) { return KoenigsMap(m, fixed, lambda); }

}  // namespace valironkit::valiron
