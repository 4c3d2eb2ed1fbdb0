#include "valironkit/ball.hpp"

#include <cmath>
#include <cstdio>

#include "valironkit/charts.hpp"
#include "valironkit/errors.hpp"

namespace valironkit::ball {

namespace {

// A ball map that is the Cayley transport of a Siegel-native tree is iterated
// in the Siegel chart, where points close to e1 keep full relative precision.
MapDescriptor working_map(const MapDescriptor& m) {
  if (m.domain() == DomainKind::Siegel) return m;
  if (m.domain() != DomainKind::Ball) throw ConfigError("expected a map of the ball or the Siegel domain");
  MapDescriptor t = maps::cayley_transport(m);
  const bool clean = !expr::contains_op(t.expr(), expr::Op::Cayley) && !expr::contains_op(t.expr(), expr::Op::InverseCayley);
  return clean ? t : m;
}

CVec to_working(const MapDescriptor& original, const MapDescriptor& work, const CVec& z) {
  if (original.domain() == work.domain()) return z;
  return charts::ball_cayley(z);
}

// Orbit of z (working coordinates) until n steps or loss of precision.
std::vector<CVec> orbit(const MapDescriptor& m, CVec z, int n, bool* truncated) {
  std::vector<CVec> pts{z};
  for (int k = 0; k < n; ++k) {
    if (m.domain() == DomainKind::Ball && 1.0 - z.squaredNorm() < 1e-12) {
      *truncated = true;
      break;
    }
    z = maps::evaluate(m, z);
    pts.push_back(z);
  }
  return pts;
}

bool stable_tail(const std::vector<double>& L) {
  if (L.size() < 26) return false;
  const double last = L.back(), before = L[L.size() - 26];
  return std::abs(last - before) < 1e-6 * std::abs(last);
}

double l_functional(DomainKind kind, const CVec& z) {
  if (kind == DomainKind::Siegel) return std::abs(z(0) + kI) / (2.0 * charts::height(z));
  return std::abs(1.0 - z(0)) / (1.0 - z.squaredNorm());
}

// |1 - z1|, up to the common factor 2 in the Siegel chart.
double first_gap(DomainKind kind, const CVec& z) {
  if (kind == DomainKind::Siegel) return 1.0 / std::abs(z(0) + kI);
  return std::abs(1.0 - z(0));
}

KoranyiTrace trace_of(DomainKind kind, const std::vector<CVec>& pts, double c) {
  KoranyiTrace t;
  t.c = c;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const CVec& z = pts[k];
    t.L.push_back(l_functional(kind, z));
    t.height.push_back(kind == DomainKind::Siegel ? charts::height(z)
                                                  : (1.0 - z.squaredNorm()) / std::norm(1.0 - z(0)));
    t.z1.push_back(charts::to_bounded(kind, z)(0));
    if (k + 1 < pts.size()) t.S.push_back(first_gap(kind, pts[k + 1]) / first_gap(kind, z));
  }
  for (std::size_t k = 0; k < t.L.size(); ++k) t.sup = std::max(t.sup, t.L[k]);
  for (std::size_t k = 0; k < t.L.size(); ++k)
    if (t.L[k] >= t.sup * (1.0 - 1e-12)) {
      t.argmax = static_cast<int>(k);
      break;
    }
  t.stable = stable_tail(t.L);
  const int len = static_cast<int>(t.L.size());
  t.bounded = t.stable && 4 * t.argmax < 3 * (len - 1);
  t.julia_excess = -1.0;
  for (std::size_t k = 0; k < t.S.size(); ++k)
    t.julia_excess = std::max(t.julia_excess, t.S[k] * t.L[k + 1] / (c * t.L[k]) - 1.0);
  return t;
}

double siegel_radial_ratio(const MapDescriptor& m, double h) {
  CVec w = CVec::Zero(m.dim());
  w(0) = cplx(0.0, (2.0 - h) / h);
  const CVec W = maps::evaluate(m, w);
  const double d = charts::defect(DomainKind::Siegel, W);
  return d / ((1.0 + std::sqrt(std::max(0.0, 1.0 - d))) * h);
}

accel::Limit<double> radial_estimate(const MapDescriptor& m) {
  std::vector<double> seq;
  if (m.domain() == DomainKind::Siegel) {
    for (int k = 4; k <= 40; ++k) seq.push_back(siegel_radial_ratio(m, std::ldexp(1.0, -k)));
  } else {
    for (int k = 4; k <= 40; ++k) {
      const double h = std::ldexp(1.0, -k);
      CVec z = CVec::Zero(m.dim());
      z(0) = 1.0 - h;
      const double gap = 1.0 - maps::evaluate(m, z).norm();
      if (gap < 1e-5) break;
      seq.push_back(gap / h);
    }
  }
  return accel::aitken_limit(seq);
}

}  // namespace

BallPoint::BallPoint(CVec coords) : z_(std::move(coords)) {
  if (z_.size() < 1 || !z_.allFinite()) throw DomainError("ball point needs finite coordinates");
  if (!(z_.norm() < 1.0 - 1e-15)) throw DomainError("point is not inside the unit ball");
}

SiegelPoint::SiegelPoint(CVec coords) : w_(std::move(coords)) {
  if (w_.size() < 1 || !w_.allFinite()) throw DomainError("Siegel point needs finite coordinates");
  if (!(height() > 0.0)) throw DomainError("point is not inside the Siegel domain");
}

double SiegelPoint::height() const { return charts::height(w_); }

CVec iota(int n) {
  CVec w = CVec::Zero(n);
  w(0) = kI;
  return w;
}

BallPoint ball_automorphism(const BallPoint& a, const BallPoint& z) {
  if (a.dim() != z.dim()) throw ConfigError("points of different dimension");
  CVec out = charts::ball_automorphism(a.coords(), z.coords());
  // Rounding may push the image of a point near the sphere onto it.
  const double r = out.norm();
  if (r >= 1.0 - 1e-15) out *= (1.0 - 2e-15) / r;
  return BallPoint(std::move(out));
}

double q_quantity(const BallPoint& a, const BallPoint& b) {
  if (a.dim() != b.dim()) throw ConfigError("points of different dimension");
  return charts::q_ball(a.coords(), b.coords());
}

SiegelPoint siegel_translation(const CVec& b, const SiegelPoint& w) {
  if (b.size() != w.dim()) throw ConfigError("translation parameter has the wrong length");
  return SiegelPoint(expr::evaluate(expr::siegel_translation(b), w.coords()));
}

SiegelPoint siegel_dilation(double A, const SiegelPoint& w) {
  return SiegelPoint(expr::evaluate(expr::siegel_dilation(A), w.coords()));
}

SiegelPoint psi_automorphism(double A, const CVec& a, const CMat& U, const SiegelPoint& z) {
  if (a.size() != z.dim()) throw ConfigError("psi parameter has the wrong length");
  return SiegelPoint(expr::evaluate(expr::psi(A, a, U), z.coords()));
}

CVec psi_boundary_fixed_point(double A, const CVec& a, const CMat& U) {
  if (A == 1.0) throw SingularSystemError("A = 1: the fixed-point system is singular");
  expr::psi(A, a, U);  // parameter validation
  const auto m = a.size() - 1;
  const double s = std::sqrt(A);
  const CVec ap = a.tail(m);
  CVec c(a.size());
  if (m > 0) {
    const CMat M = CMat::Identity(m, m) - s * U;
    const Eigen::FullPivLU<CMat> lu(M);
    if (!lu.isInvertible()) throw SingularSystemError("I - sqrt(A) U is singular");
    c.tail(m) = lu.solve(ap);
  }
  const cplx cross = m > 0 ? charts::ball_inner(U * c.tail(m), ap) : cplx(0.0);
  c(0) = (a(0).real() + kI * ap.squaredNorm() + 2.0 * kI * s * cross) / (1.0 - A);
  return c;
}

SiegelPoint ball_cayley(const BallPoint& z) {
  if (std::abs(1.0 - z.coords()(0)) <= 1e-15) throw DomainError("Cayley map is singular at z1 = 1");
  return SiegelPoint(charts::ball_cayley(z.coords()));
}

BallPoint ball_inverse_cayley(const SiegelPoint& w) { return BallPoint(charts::ball_inverse_cayley(w.coords())); }

std::optional<CVec> interior_attractor(const MapDescriptor& m, int max_n) {
  const MapDescriptor cm = maps::ensure_certified(m);
  if (cm.domain() != DomainKind::Ball && cm.domain() != DomainKind::Siegel)
    throw ConfigError("expected a map of the ball or the Siegel domain");
  CVec z = cm.domain() == DomainKind::Siegel ? iota(cm.dim()) : CVec::Zero(cm.dim());
  for (int k = 0; k < max_n; ++k) {
    const CVec w = maps::evaluate(cm, z);
    if (charts::defect(cm.domain(), w) < 1e-8) return std::nullopt;
    if ((w - z).norm() < 1e-14 * std::max(1.0, w.norm())) return w;
    z = w;
  }
  return std::nullopt;
}

BallDilatation ball_dilatation(const MapDescriptor& m, bool check_iterates) {
  const MapDescriptor w = working_map(maps::ensure_certified(m));
  BallDilatation out;
  out.radial = radial_estimate(w);
  out.c = out.radial.value;

  std::vector<double> orbital;
  if (w.domain() == DomainKind::Siegel) {
    bool cut = false;
    const auto pts = orbit(w, iota(w.dim()), 60, &cut);
    for (std::size_t n = 0; n + 1 < pts.size(); ++n) {
      const double da = charts::defect(DomainKind::Siegel, pts[n]);
      const double db = charts::defect(DomainKind::Siegel, pts[n + 1]);
      if (!(db > 0.0) || !std::isfinite(da)) break;
      orbital.push_back(db / da * (1.0 + std::sqrt(std::max(0.0, 1.0 - da))) /
                        (1.0 + std::sqrt(std::max(0.0, 1.0 - db))));
    }
  } else {
    bool cut = false;
    const auto pts = orbit(w, CVec::Zero(w.dim()), 20000, &cut);
    for (std::size_t n = 0; n + 1 < pts.size(); ++n) {
      const double ga = 1.0 - pts[n].norm(), gb = 1.0 - pts[n + 1].norm();
      if (gb < 1e-8) break;
      orbital.push_back(gb / ga);
    }
  }
  out.orbital = accel::aitken_limit(orbital);
  if (orbital.size() < 3) out.notes.push_back("orbital estimator has fewer than three terms");
  if (std::abs(out.radial.value - out.orbital.value) > 1e-4) {
    out.flagged = true;
    char buf[120];
    std::snprintf(buf, sizeof buf, "radial and orbital estimates disagree: %.10g vs %.10g", out.radial.value,
                  out.orbital.value);
    out.notes.emplace_back(buf);
  }

  if (check_iterates) {
    for (int n = 2; n <= 3; ++n) {
      const double cn = radial_estimate(maps::iterate_descriptor(w, n)).value;
      out.iterate_c.push_back(cn);
      const double expect = std::pow(out.c, n);
      if (std::abs(cn - expect) > 0.1 * expect) {
        out.iterate_law = false;
        out.notes.push_back("c(phi_" + std::to_string(n) + ") differs from c^" + std::to_string(n) + " by more than 10%");
      }
    }
  }
  return out;
}

std::string KoranyiTrace::to_csv() const {
  std::string s = "n,L,S,height,re_z1,im_z1\n";
  char buf[256];
  for (std::size_t k = 0; k < L.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,", k, L[k]);
    s += buf;
    if (k < S.size()) {
      std::snprintf(buf, sizeof buf, "%.17g", S[k]);
      s += buf;
    }
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g\n", height[k], z1[k].real(), z1[k].imag());
    s += buf;
  }
  return s;
}

KoranyiTrace koranyi_trace(const MapDescriptor& m, const CVec& z0, int n, std::optional<double> c) {
  if (n < 1) throw ConfigError("the trace needs at least one step");
  const MapDescriptor cm = maps::ensure_certified(m);
  if (z0.size() != cm.dim()) throw ConfigError("starting point has the wrong dimension");
  if (!charts::is_interior(cm.domain(), z0)) throw DomainError("starting point is outside the domain");
  const MapDescriptor w = working_map(cm);
  const double cc = c ? *c : ball_dilatation(w, false).c;
  if (!(cc > 0.0)) throw ConfigError("dilatation coefficient must be positive");
  bool cut = false;
  const auto pts = orbit(w, to_working(cm, w, z0), n, &cut);
  return trace_of(w.domain(), pts, cc);
}

ClaimVerdict claim_extension_check(const MapDescriptor& m, const CVec& z0, int N_power, int n) {
  if (N_power < 1) throw ConfigError("N_power must be at least 1");
  if (n < 30) throw ConfigError("the claim check needs at least 30 steps");
  const MapDescriptor cm = maps::ensure_certified(m);
  if (z0.size() != cm.dim()) throw ConfigError("starting point has the wrong dimension");
  if (!charts::is_interior(cm.domain(), z0)) throw DomainError("starting point is outside the domain");
  const MapDescriptor w = working_map(cm);
  const CVec start = to_working(cm, w, z0);

  ClaimVerdict v;
  v.N_power = N_power;
  v.c = ball_dilatation(w, false).c;
  v.c_power = std::pow(v.c, N_power);
  v.power_below_threshold = v.c_power < kKoranyiThreshold;

  const MapDescriptor psi = maps::iterate_descriptor(w, N_power);
  bool cut = false;
  const auto coarse = orbit(psi, start, n, &cut);
  const KoranyiTrace tp = trace_of(w.domain(), coarse, v.c_power);
  v.iterate_bounded = tp.bounded;

  const auto full = orbit(w, start, n * N_power, &cut);
  const KoranyiTrace tf = trace_of(w.domain(), full, v.c);
  v.full_bounded = tf.bounded;
  v.sup_L = tf.sup;
  v.julia_pass = tp.julia_pass() && tf.julia_pass();

  v.interleave_excess = -1.0;
  for (std::size_t base = N_power; base < full.size(); base += N_power)
    for (int j = 1; j < N_power && base + j < full.size(); ++j) {
      const double lhs = charts::pseudo_distance(w.domain(), full[base + j], full[base]);
      const double rhs = charts::pseudo_distance(w.domain(), full[0], full[j]);
      v.interleave_excess = std::max(v.interleave_excess, lhs - rhs);
    }
  return v;
}

}  // namespace valironkit::ball
