#include "valironkit/dynamics1d.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include "valironkit/charts.hpp"
#include "valironkit/errors.hpp"
#include "valironkit/geometry.hpp"
#include "valironkit/parallel.hpp"
#include "valironkit/sampling.hpp"

namespace valironkit::dynamics {

namespace {

void require_one_variable(const MapDescriptor& m) {
  if (m.domain() != DomainKind::Disk && m.domain() != DomainKind::HalfPlane)
    throw ConfigError("one-variable dynamics needs a disk or half-plane map");
}

// Bounded-model point of a native one-variable point.
cplx bounded(DomainKind kind, cplx z) { return kind == DomainKind::Disk ? z : geometry::inverse_cayley(z); }

// 1 - |u|^2 of the bounded-model point, without cancellation on H.
double defect(DomainKind kind, cplx z) { return charts::defect(kind, charts::scalar(z)); }

bool interior(DomainKind kind, cplx z) { return charts::is_interior(kind, charts::scalar(z)); }

struct EscapeRule {
  DomainKind kind;
  double cap;
  bool escaped(cplx z) const {
    if (kind == DomainKind::Disk) return std::abs(z) >= cap;
    return std::abs(z) >= cap || defect(kind, z) <= 4.0 / cap;
  }
};

EscapeRule escape_rule(DomainKind kind, double cap) {
  if (cap <= 0.0) cap = kind == DomainKind::Disk ? 1.0 - 1e-12 : 1e12;
  return {kind, cap};
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Newton on phi(z) - z with damping that keeps iterates inside the domain.
std::optional<cplx> newton(const MapDescriptor& m, cplx z) {
  const DomainKind kind = m.domain();
  for (int it = 0; it < 100; ++it) {
    const cplx f = maps::evaluate(m, z) - z;
    if (std::abs(f) < 1e-14 * std::max(1.0, std::abs(z))) return z;
    const cplx d = maps::derivative(m, z) - 1.0;
    if (d == 0.0) return std::nullopt;
    const cplx step = f / d;
    double t = 1.0;
    while (!interior(kind, z - t * step) && t > 1e-12) t *= 0.5;
    if (!interior(kind, z - t * step)) return std::nullopt;
    z -= t * step;
  }
  return std::nullopt;
}

std::array<cplx, 5> start_points(DomainKind kind) {
  std::array<cplx, 5> s = {cplx(0.0), cplx(0.5), cplx(-0.5), cplx(0.0, 0.5), cplx(0.0, -0.5)};
  if (kind == DomainKind::HalfPlane)
    for (auto& z : s) z = geometry::cayley(z);
  return s;
}

DenjoyWolff denjoy_wolff_unchecked(const MapDescriptor& m, int max_n) {
  const auto starts = start_points(m.domain());
  const auto rule = escape_rule(m.domain(), 0.0);
  std::array<cplx, 5> limits;
  parallel_for(starts.size(), [&](std::size_t s) {
    cplx z = starts[s];
    for (int n = 0; n < max_n && !rule.escaped(z); ++n) z = maps::evaluate(m, z);
    const cplx u = bounded(m.domain(), z);
    limits[s] = u / std::abs(u);
  });
  DenjoyWolff out;
  for (const cplx& zeta : limits) out.spread = std::max(out.spread, std::abs(std::arg(zeta * std::conj(limits[0]))));
  if (!(out.spread < 1e-6))
    throw Inconclusive("Denjoy-Wolff orbits disagree: angular spread " + fmt(out.spread));
  out.point.zeta = limits[0];
  if (m.domain() == DomainKind::HalfPlane) {
    if (std::abs(limits[0] - 1.0) < 1e-6) {
      out.point.at_infinity = true;
      out.point.zeta = 1.0;
    } else {
      out.point.x = geometry::cayley(limits[0]).real();
    }
  }
  return out;
}

// Rotates the disk form of m so that the boundary point becomes 1.
MapDescriptor disk_form(const MapDescriptor& m) {
  return m.domain() == DomainKind::Disk ? m : maps::cayley_transport(m);
}

}  // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::Escaped: return "escaped";
    case Termination::Cap: return "cap";
  }
  return "?";
}

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Elliptic: return "elliptic";
    case Kind::Hyperbolic: return "hyperbolic";
    case Kind::Parabolic: return "parabolic";
  }
  return "?";
}

double native_distance(DomainKind kind, cplx z, cplx w) {
  return kind == DomainKind::Disk ? geometry::disk_distance(z, w) : geometry::halfplane_distance(z, w);
}

cplx barycenter(DomainKind kind) { return kind == DomainKind::Disk ? cplx(0.0) : kI; }

std::string OrbitTrace::to_csv() const {
  std::string out = "n,re,im,abs,arg,step_d,ratio_re,ratio_im\n";
  for (std::size_t n = 0; n < points.size(); ++n) {
    const cplx z = points[n];
    out += std::to_string(n) + "," + fmt(z.real()) + "," + fmt(z.imag()) + "," + fmt(std::abs(z)) + "," +
           fmt(std::arg(z)) + ",";
    if (n < steps.size()) out += fmt(steps[n]) + "," + fmt(ratios[n].real()) + "," + fmt(ratios[n].imag());
    else out += ",,";
    out += "\n";
  }
  return out;
}

OrbitTrace iterate_orbit(const MapDescriptor& m, cplx z0, int max_n, double escape_cap) {
  require_one_variable(m);
  if (!interior(m.domain(), z0)) throw DomainError("orbit start is not an interior point");
  const auto rule = escape_rule(m.domain(), escape_cap);
  const bool half = m.domain() == DomainKind::HalfPlane;
  OrbitTrace t;
  t.domain = m.domain();
  t.points.push_back(z0);
  if (half) t.args.push_back(std::arg(z0));
  cplx z = z0;
  t.termination = Termination::Cap;
  for (int n = 0; n < max_n; ++n) {
    const cplx w = maps::evaluate(m, z);
    t.points.push_back(w);
    t.steps.push_back(native_distance(m.domain(), z, w));
    t.ratios.push_back(half ? w / z : (1.0 - w) / (1.0 - z));
    if (half) t.args.push_back(std::arg(w));
    const bool still = std::abs(w - z) < 1e-14;
    z = w;
    if (still) {
      t.termination = Termination::Converged;
      break;
    }
    if (rule.escaped(z)) {
      t.termination = Termination::Escaped;
      break;
    }
  }
  return t;
}

std::optional<FixedPoint> find_interior_fixed_point(const MapDescriptor& m, int max_n) {
  require_one_variable(m);
  const DomainKind kind = m.domain();
  std::vector<cplx> grid;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const cplx u(-0.6 + 0.3 * j, -0.6 + 0.3 * i);
      grid.push_back(kind == DomainKind::Disk ? u : geometry::cayley(u));
    }
  std::vector<std::optional<cplx>> found(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    try {
      found[k] = newton(m, grid[k]);
    } catch (const Error&) {
      found[k] = std::nullopt;
    }
  });
  for (const auto& p : found) {
    if (!p) continue;
    // A limit this close to the circle is a boundary fixed point.
    if (1.0 - std::abs(bounded(kind, *p)) <= 1e-6) continue;
    return FixedPoint{*p, maps::derivative(m, *p)};
  }

  // No interior fixed point found: confirm by watching the orbit leave the
  // pseudo-hyperbolic ball of radius 1 - 1e-4 around its start.
  const cplx z0 = barycenter(kind);
  const auto rule = escape_rule(kind, 0.0);
  cplx z = z0;
  for (int n = 0; n < max_n; ++n) {
    z = maps::evaluate(m, z);
    if (rule.escaped(z) || native_distance(kind, z0, z) >= 1.0 - 1e-4) return std::nullopt;
  }
  throw Inconclusive("Newton failed but the orbit stays in a compact set after " + std::to_string(max_n) + " steps");
}

DenjoyWolff denjoy_wolff(const MapDescriptor& m, int max_n) {
  require_one_variable(m);
  if (find_interior_fixed_point(m, max_n)) throw ConfigError("map has an interior fixed point");
  return denjoy_wolff_unchecked(m, max_n);
}

Dilatation dilatation_coefficient(const MapDescriptor& m, const BoundaryPoint& dw, int orbit_n) {
  require_one_variable(m);
  Dilatation out;
  std::vector<double> radial, orbital;

  if (m.domain() == DomainKind::HalfPlane && dw.at_infinity) {
    // r = 1 - h corresponds to i (2 - h) / h in H; all quantities exact.
    for (int k = 4; k <= 40; ++k) {
      const double h = std::ldexp(1.0, -k);
      const cplx w = maps::evaluate(m, cplx(0.0, (2.0 - h) / h));
      const double u = std::abs(geometry::inverse_cayley(w));
      radial.push_back(defect(m.domain(), w) / ((1.0 + u) * h));
    }
    const auto trace = iterate_orbit(m, barycenter(m.domain()), orbit_n);
    for (std::size_t n = 0; n + 1 < trace.size(); ++n) {
      const cplx a = trace.points[n], b = trace.points[n + 1];
      const double ua = std::abs(geometry::inverse_cayley(a)), ub = std::abs(geometry::inverse_cayley(b));
      orbital.push_back(defect(m.domain(), b) / defect(m.domain(), a) * (1.0 + ua) / (1.0 + ub));
    }
  } else {
    const MapDescriptor d = disk_form(m);
    const cplx zeta = dw.zeta;
    // Rounding in 1 - |w| is about eps / (1 - |w|); stop before it reaches 1e-10.
    for (int k = 4; k <= 40; ++k) {
      const double h = std::ldexp(1.0, -k);
      const double gap = 1.0 - std::abs(maps::evaluate(d, (1.0 - h) * zeta));
      if (gap < 1e-5) break;
      radial.push_back(gap / h);
    }
    const auto trace = iterate_orbit(d, 0.0, orbit_n);
    for (std::size_t n = 0; n + 1 < trace.size(); ++n) {
      const double ga = 1.0 - std::abs(trace.points[n]), gb = 1.0 - std::abs(trace.points[n + 1]);
      if (gb < 1e-8) break;
      orbital.push_back(gb / ga);
    }
  }

  out.radial = accel::aitken_limit(radial);
  out.orbital = accel::aitken_limit(orbital);
  out.alpha = out.radial.value;
  if (orbital.size() < 3) out.notes.push_back("orbital estimator has fewer than three terms");
  if (std::abs(out.radial.value - out.orbital.value) > 1e-4) {
    out.flagged = true;
    out.notes.push_back("radial and orbital estimates disagree: " + fmt(out.radial.value) + " vs " +
                        fmt(out.orbital.value));
  }
  if (!(out.alpha > 1e-8)) out.notes.push_back("estimated alpha is not positive");
  return out;
}

Classification classify(const MapDescriptor& m, int max_n) {
  require_one_variable(m);
  const MapDescriptor cm = maps::ensure_certified(m);
  Classification c;
  c.fixed = find_interior_fixed_point(cm, max_n);
  if (c.fixed) {
    c.kind = Kind::Elliptic;
    if (std::abs(c.fixed->multiplier) > 1.0 + 1e-10) c.warnings.push_back("multiplier exceeds 1 in modulus");
    return c;
  }
  c.dw = denjoy_wolff_unchecked(cm, max_n);
  c.dilatation = dilatation_coefficient(cm, c.dw->point);
  c.alpha = c.dilatation->alpha;
  c.kind = c.alpha <= kParabolicThreshold ? Kind::Hyperbolic : Kind::Parabolic;
  for (const auto& n : c.dilatation->notes) c.warnings.push_back(n);
  if (c.alpha > 1.0 + 1e-6) c.warnings.push_back("alpha exceeds 1 beyond tolerance");
  if (c.kind == Kind::Parabolic && c.alpha < 1.0 - 1e-6) c.warnings.push_back("borderline alpha classified parabolic");
  return c;
}

Confinement confinement_check(const OrbitTrace& trace) {
  if (trace.domain != DomainKind::HalfPlane) throw ConfigError("confinement check needs a half-plane orbit");
  double worst = 0.0;
  for (double a : trace.args) worst = std::max(worst, std::abs(a - kPi / 2.0));
  return {kPi / 2.0 - worst};
}

JuliaReport julia_check(const MapDescriptor& m, const BoundaryPoint& dw, double alpha, int n_samples,
                        std::uint64_t seed) {
  require_one_variable(m);
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  JuliaReport r;
  r.samples = n_samples;
  const bool at_inf = m.domain() == DomainKind::HalfPlane && dw.at_infinity;
  const MapDescriptor d = at_inf ? m : disk_form(m);
  sampling::DomainSampler sampler(d.domain(), 1, seed);
  for (int k = 0; k < n_samples; ++k) {
    const cplx z = sampler.next()(0);
    const cplx w = maps::evaluate(d, z);
    // Poisson ratio at infinity in H is Im z.
    const double target = (at_inf ? z.imag() : geometry::poisson_ratio(dw.zeta, z)) / alpha;
    const double got = at_inf ? w.imag() : geometry::poisson_ratio(dw.zeta, w);
    r.max_violation = std::max(r.max_violation, (target - got) / target);
  }
  return r;
}

RayLimit julia_caratheodory_limit(const MapDescriptor& m) {
  if (m.domain() != DomainKind::HalfPlane) throw ConfigError("ray limits need a half-plane map");
  RayLimit out;
  for (double theta : {kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0}) {
    std::vector<cplx> seq;
    for (int k = 4; k <= 40; ++k) {
      const cplx z = std::polar(std::ldexp(1.0, k), theta);
      seq.push_back(maps::evaluate(m, z) / z);
    }
    out.rays.push_back(accel::aitken_limit(seq));
  }
  for (const auto& a : out.rays)
    for (const auto& b : out.rays) out.spread = std::max(out.spread, std::abs(a.value - b.value));
  out.agree = out.spread <= 1e-6;
  out.A = out.rays[1].value.real();
  return out;
}

}  // namespace valironkit::dynamics
