#include "valironkit/verify.hpp"

#include <cmath>

#include "valironkit/ball.hpp"
#include "valironkit/charts.hpp"
#include "valironkit/dynamics1d.hpp"
#include "valironkit/errors.hpp"
#include "valironkit/parallel.hpp"
#include "valironkit/sampling.hpp"

namespace valironkit::verify {

namespace {

Check make(const std::string& map, const std::string& inv, double violation, double tol, std::string note = {}) {
  return {map, inv, violation, tol, violation <= tol, std::move(note)};
}

template <class F>
double max_over_pairs(const maps::MapDescriptor& m, int pairs, std::uint64_t seed, F&& f) {
  sampling::DomainSampler s(m.domain(), m.dim(), seed, 0.97, 1);
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < pairs; ++k) {
    const auto [a, b] = s.next_pair();
    worst = std::max(worst, f(a, b, maps::evaluate(m, a), maps::evaluate(m, b)));
  }
  return worst;
}

void one_variable_checks(const corpus::Entry& e, std::uint64_t seed, std::vector<Check>& out) {
  const auto c = dynamics::classify(e.map);
  if (c.kind == dynamics::Kind::Elliptic) return;
  const auto j = dynamics::julia_check(e.map, c.dw->point, c.alpha, 2000, seed);
  out.push_back(make(e.name, "julia-inequality", j.max_violation, 1e-9));
  if (e.map.domain() == DomainKind::HalfPlane && c.dw->point.at_infinity && c.kind == dynamics::Kind::Hyperbolic) {
    const auto trace = dynamics::iterate_orbit(e.map, dynamics::barycenter(e.map.domain()), 200);
    out.push_back(make(e.name, "nontangential-confinement", -dynamics::confinement_check(trace).delta, 0.0));
  }
}

void several_variable_checks(const corpus::Entry& e, std::vector<Check>& out) {
  if (ball::interior_attractor(e.map)) return;
  const auto d = ball::ball_dilatation(e.map, true);
  if (!(d.c < dynamics::kParabolicThreshold)) return;  // no boundary attraction at e1
  double law = 0.0;
  for (std::size_t n = 0; n < d.iterate_c.size(); ++n)
    law = std::max(law, std::abs(d.iterate_c[n] / std::pow(d.c, n + 2.0) - 1.0));
  out.push_back(make(e.name, "dilatation-iterate-law", law, 0.1));
  const CVec z0 = e.map.domain() == DomainKind::Siegel ? ball::iota(e.map.dim()) : CVec::Zero(e.map.dim());
  const auto t = ball::koranyi_trace(e.map, z0, 100, d.c);
  out.push_back(make(e.name, "julia-inequality", t.julia_excess, 1e-9));
}

}  // namespace

bool Report::pass() const { return failures() == 0; }

int Report::failures() const {
  int n = 0;
  for (const auto& c : checks) n += c.pass ? 0 : 1;
  return n;
}

nlohmann::json Report::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j = {{"map", c.map},
                        {"invariant", c.invariant},
                        {"violation", c.violation},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass}};
    if (!c.note.empty()) j["note"] = c.note;
    arr.push_back(std::move(j));
  }
  return {{"checks", arr}, {"failures", failures()}, {"pass", pass()}};
}

double distance_excess(const maps::MapDescriptor& m, int pairs, std::uint64_t seed) {
  const DomainKind k = m.domain();
  return max_over_pairs(m, pairs, seed, [k](const CVec& a, const CVec& b, const CVec& fa, const CVec& fb) {
    return charts::pseudo_distance(k, fa, fb) - charts::pseudo_distance(k, a, b);
  });
}

double q_excess(const maps::MapDescriptor& m, int pairs, std::uint64_t seed) {
  const DomainKind k = m.domain();
  return max_over_pairs(m, pairs, seed, [k](const CVec& a, const CVec& b, const CVec& fa, const CVec& fb) {
    return charts::q_quantity(k, fa, fb) / charts::q_quantity(k, a, b) - 1.0;
  });
}

std::vector<Check> check_map(const corpus::Entry& e, std::uint64_t seed, int pairs) {
  std::vector<Check> out;
  try {
    const auto v = maps::validate_self_map(e.map, 2000, seed);
    out.push_back(make(e.name, "self-map", std::max(v.max_boundary_violation, v.schwarz_violation),
                       maps::ValidationReport::kTolerance));
    if (!v.pass()) return out;
    const auto m = e.map.with_certificate(v);
    const corpus::Entry certified{e.name, m};
    out.push_back(make(e.name, "distance-contraction", distance_excess(m, pairs, seed), 1e-12));
    out.push_back(make(e.name, "q-monotonicity", q_excess(m, pairs, seed), 1e-12));
    if (m.dim() == 1 && (m.domain() == DomainKind::Disk || m.domain() == DomainKind::HalfPlane))
      one_variable_checks(certified, seed, out);
    else
      several_variable_checks(certified, out);
  } catch (const Error& err) {
    out.push_back({e.name, "evaluation", std::numeric_limits<double>::infinity(), 0.0, false, err.what()});
  }
  return out;
}

Report run_suite(const std::vector<corpus::Entry>& entries, std::uint64_t seed, int pairs) {
  std::vector<std::vector<Check>> parts(entries.size());
  parallel_for(entries.size(), [&](std::size_t k) { parts[k] = check_map(entries[k], seed, pairs); });
  Report r;
  for (auto& p : parts)
    for (auto& c : p) r.checks.push_back(std::move(c));
  return r;
}

}  // namespace valironkit::verify
