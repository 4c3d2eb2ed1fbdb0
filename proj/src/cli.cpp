#include "valironkit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "valironkit/ball.hpp"
#include "valironkit/charts.hpp"
#include "valironkit/corpus.hpp"
#include "valironkit/dynamics1d.hpp"
#include "valironkit/errors.hpp"
#include "valironkit/parallel.hpp"
#include "valironkit/valiron.hpp"
#include "valironkit/verify.hpp"

namespace valironkit::cli {

using nlohmann::json;

namespace {

std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0' || !std::isfinite(v))
      throw ConfigError(std::string(what) + ": '" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(std::string(what) + ": empty list");
  return out;
}

SeedGrid parse_grid(const std::string& text) {
  const auto v = parse_numbers(text, "--seed-grid");
  if (v.size() != 4) throw ConfigError("--seed-grid expects a,b,nx,ny");
  SeedGrid g{v[0], v[1], static_cast<int>(v[2]), static_cast<int>(v[3])};
  if (g.nx != v[2] || g.ny != v[3] || g.nx < 1 || g.ny < 1) throw ConfigError("--seed-grid: nx and ny must be positive integers");
  if (!(g.a >= 0.0) || !(g.b > 0.0)) throw ConfigError("--seed-grid: need a >= 0 and b > 0");
  if (g.nx * g.ny > 10000) throw ConfigError("--seed-grid: at most 10000 seeds");
  return g;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read map file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json header(const RunConfig& cfg) {
  return {{"tool", "valironkit"},
          {"version", VALIRONKIT_VERSION},
          {"command", cfg.command},
          {"config_hash", config_hash(cfg)},
          {"rng_seed", cfg.rng_seed}};
}

std::string csv_preamble(const RunConfig& cfg) {
  return "# valironkit " + std::string(VALIRONKIT_VERSION) + " command=" + cfg.command +
         " config_hash=" + config_hash(cfg) + " rng_seed=" + std::to_string(cfg.rng_seed) + "\n";
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Results are accumulated here and written once the command finishes or fails.
struct Artifacts {
  const RunConfig& cfg;
  json doc;
  std::vector<std::pair<std::string, std::string>> csv;

  explicit Artifacts(const RunConfig& c) : cfg(c), doc(header(c)) {}

  void add_csv(const std::string& name, const std::string& body) { csv.emplace_back(name, csv_preamble(cfg) + body); }

  void flush(std::ostream& out) const {
    const std::string text = doc.dump(2) + "\n";
    out << text;
    if (cfg.out_dir.empty()) return;
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + cfg.out_dir + "'");
    auto write = [&](const std::string& name, const std::string& body) {
      std::ofstream f(fs::path(cfg.out_dir) / name, std::ios::binary);
      f << body;
      if (!f) throw ConfigError("cannot write '" + name + "' in '" + cfg.out_dir + "'");
    };
    write(cfg.command + ".json", text);
    for (const auto& [name, body] : csv) write(name, body);
  }
};

cplx start_1d(const RunConfig& cfg, DomainKind kind) {
  if (cfg.z0.empty()) return dynamics::barycenter(kind);
  if (cfg.z0.size() != 2) throw ConfigError("--z0 expects re,im for a one-variable map");
  return {cfg.z0[0], cfg.z0[1]};
}

CVec start_nd(const RunConfig& cfg, const maps::MapDescriptor& m) {
  if (cfg.z0.empty()) return m.domain() == DomainKind::Siegel ? ball::iota(m.dim()) : CVec::Zero(m.dim());
  if (cfg.z0.size() != 2 * static_cast<std::size_t>(m.dim())) throw ConfigError("--z0 expects one re,im pair per coordinate");
  CVec z(m.dim());
  for (int k = 0; k < m.dim(); ++k) z(k) = cplx(cfg.z0[2 * k], cfg.z0[2 * k + 1]);
  return z;
}

bool one_variable(const maps::MapDescriptor& m) {
  return m.domain() == DomainKind::Disk || m.domain() == DomainKind::HalfPlane;
}

json vec_json(const CVec& v) {
  json a = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(maps::complex_to_json(v(k)));
  return a;
}

json dilatation_json(const accel::Limit<double>& r, const accel::Limit<double>& o, bool flagged) {
  return {{"radial", r.value}, {"radial_certificate", r.residual}, {"orbital", o.value},
          {"orbital_certificate", o.residual}, {"flagged", flagged}};
}

int cmd_classify(const RunConfig& cfg, Artifacts& art) {
  const auto m = maps::ensure_certified(load_map(cfg.map_arg));
  json r;
  if (one_variable(m)) {
    const auto c = dynamics::classify(m);
    r["kind"] = dynamics::to_string(c.kind);
    if (c.fixed) {
      r["fixed_point"] = maps::complex_to_json(c.fixed->point);
      r["lambda"] = maps::complex_to_json(c.fixed->multiplier);
    } else {
      r["alpha"] = c.alpha;
      r["denjoy_wolff"] = {{"zeta", maps::complex_to_json(c.dw->point.zeta)},
                           {"at_infinity", c.dw->point.at_infinity},
                           {"x", c.dw->point.x},
                           {"spread", c.dw->spread}};
      r["dilatation"] = dilatation_json(c.dilatation->radial, c.dilatation->orbital, c.dilatation->flagged);
    }
    r["warnings"] = c.warnings;
  } else {
    if (const auto p = ball::interior_attractor(m)) {
      r["kind"] = "elliptic";
      r["fixed_point"] = vec_json(*p);
      const Eigen::ComplexEigenSolver<CMat> es(maps::derivative(m, *p));
      std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
      std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
        return std::abs(a) != std::abs(b) ? std::abs(a) > std::abs(b) : std::arg(a) < std::arg(b);
      });
      json e = json::array();
      for (cplx x : ev) e.push_back(maps::complex_to_json(x));
      r["jacobian_eigenvalues"] = e;
    } else {
      const auto d = ball::ball_dilatation(m, true);
      r["kind"] = d.c <= dynamics::kParabolicThreshold ? "hyperbolic" : "parabolic";
      r["c"] = d.c;
      r["dilatation"] = dilatation_json(d.radial, d.orbital, d.flagged);
      r["iterate_c"] = d.iterate_c;
      r["iterate_law"] = d.iterate_law;
      r["warnings"] = d.notes;
    }
  }
  art.doc["result"] = r;
  return kOk;
}

int cmd_orbit(const RunConfig& cfg, Artifacts& art) {
  const auto m = maps::ensure_certified(load_map(cfg.map_arg));
  json r;
  if (one_variable(m)) {
    const auto t = dynamics::iterate_orbit(m, start_1d(cfg, m.domain()), cfg.max_n);
    r = {{"termination", dynamics::to_string(t.termination)},
         {"steps", static_cast<int>(t.size()) - 1},
         {"last", maps::complex_to_json(t.points.back())}};
    art.add_csv("orbit.csv", t.to_csv());
  } else {
    CVec z = start_nd(cfg, m);
    if (!charts::is_interior(m.domain(), z)) throw DomainError("--z0 is outside the domain");
    std::string body = "n";
    for (int k = 1; k <= m.dim(); ++k) body += ",re_z" + std::to_string(k) + ",im_z" + std::to_string(k);
    body += "\n";
    for (int n = 0; n <= cfg.max_n; ++n) {
      body += std::to_string(n);
      for (int k = 0; k < m.dim(); ++k) body += "," + g17(z(k).real()) + "," + g17(z(k).imag());
      body += "\n";
      if (n < cfg.max_n) z = maps::evaluate(m, z);
    }
    r = {{"steps", cfg.max_n}, {"last", vec_json(z)}};
    art.add_csv("orbit.csv", body);
  }
  art.doc["result"] = r;
  return kOk;
}

int cmd_valiron(const RunConfig& cfg, Artifacts& art) {
  const auto m = maps::ensure_certified(load_map(cfg.map_arg));
  if (m.domain() != DomainKind::HalfPlane) throw ConfigError("valiron needs a half-plane map");
  const cplx z0 = start_1d(cfg, m.domain());
  const auto orbit = dynamics::iterate_orbit(m, z0, cfg.max_n);
  art.add_csv("orbit.csv", orbit.to_csv());

  // Theta over the seed grid; failures leave an empty field.
  const auto seeds = cfg.seed_grid.value_or(SeedGrid{}).points();
  std::vector<std::optional<double>> theta(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t k) {
    try {
      theta[k] = valiron::limit_data(dynamics::iterate_orbit(m, seeds[k], cfg.max_n)).theta;
    } catch (const Error&) {
    }
  });
  std::string field = "re_z0,im_z0,theta\n";
  int failures = 0;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    field += g17(seeds[k].real()) + "," + g17(seeds[k].imag()) + "," + (theta[k] ? g17(*theta[k]) : "") + "\n";
    failures += theta[k] ? 0 : 1;
  }
  art.add_csv("theta_field.csv", field);

  try {
    const valiron::ValironModel model(m, z0, cfg.max_n);
    const auto ad = valiron::angular_derivative_at_infinity(model);
    const auto& st = model.residual_stats();
    art.doc["result"] = {{"A", model.A()},
                         {"b_inf", model.b_inf()},
                         {"theta", model.theta()},
                         {"residual_max", st.max},
                         {"residual_mean", st.mean},
                         {"residual_pass", st.max <= cfg.tol},
                         {"angular_derivative", ad.value ? json(*ad.value) : json(nullptr)},
                         {"angular_derivative_note", ad.diagnostics},
                         {"n_max_used", model.n_max_used()},
                         {"theta_field_failures", failures}};
  } catch (const ConvergenceError& e) {
    art.doc["result"] = {{"error", e.what()},
                         {"previous", maps::complex_to_json(e.previous())},
                         {"last", maps::complex_to_json(e.last())},
                         {"orbit_steps", static_cast<int>(orbit.size()) - 1},
                         {"theta_field_failures", failures}};
    return kInconclusive;
  }
  return failures == 0 ? kOk : kInconclusive;
}

int cmd_heins(const RunConfig& cfg, Artifacts& art) {
  const auto m = maps::ensure_certified(load_map(cfg.map_arg));
  if (m.domain() != DomainKind::HalfPlane) throw ConfigError("heins needs a half-plane map");
  const valiron::ValironModel model(m, start_1d(cfg, m.domain()), cfg.max_n);
  const auto samples = valiron::heins_curve(model, cfg.t_values);
  std::string body = "t,kind,re,im\n";
  json arr = json::array();
  bool inconclusive = false;
  for (const auto& s : samples) {
    body += g17(s.t) + "," + valiron::to_string(s.kind) + "," + g17(s.value.real()) + "," + g17(s.value.imag()) + "\n";
    arr.push_back({{"t", s.t}, {"kind", valiron::to_string(s.kind)}, {"value", maps::complex_to_json(s.value)}});
    inconclusive = inconclusive || s.kind == valiron::HeinsKind::Inconclusive;
  }
  art.add_csv("heins.csv", body);
  art.doc["result"] = {{"samples", arr}};
  return inconclusive ? kInconclusive : kOk;
}

int cmd_ball_claim(const RunConfig& cfg, Artifacts& art) {
  const auto m = maps::ensure_certified(load_map(cfg.map_arg));
  if (m.domain() != DomainKind::Ball && m.domain() != DomainKind::Siegel)
    throw ConfigError("ball-claim needs a ball or Siegel map");
  if (cfg.max_n < 30) throw ConfigError("ball-claim needs --max-n of at least 30");
  if (ball::interior_attractor(m)) {
    art.doc["result"] = {{"error", "the map has an attracting interior fixed point; the claim does not apply"}};
    return kInconclusive;
  }
  const auto d = ball::ball_dilatation(m, true);
  if (!(d.c < dynamics::kParabolicThreshold)) {
    art.doc["result"] = {{"error", "the map is not of hyperbolic type at e1; the claim does not apply"}, {"c", d.c}};
    return kInconclusive;
  }
  int N = cfg.n_power;
  if (N == 0)
    for (N = 1; N < 64 && !(std::pow(d.c, N) < kKoranyiThreshold); ++N) {
    }

  std::vector<CVec> starts{start_nd(cfg, m)};
  if (cfg.seed_grid)
    for (cplx s : cfg.seed_grid->points()) {
      CVec w = CVec::Zero(m.dim());
      w(0) = s;
      starts.push_back(m.domain() == DomainKind::Siegel ? w : charts::ball_inverse_cayley(w));
    }
  std::vector<ball::ClaimVerdict> verdicts(starts.size());
  parallel_for(starts.size(), [&](std::size_t k) { verdicts[k] = ball::claim_extension_check(m, starts[k], N, cfg.max_n); });

  const auto trace = ball::koranyi_trace(m, starts[0], cfg.max_n * N, d.c);
  art.add_csv("koranyi.csv", trace.to_csv());

  bool all = true;
  double sup = 0.0;
  json per = json::array();
  for (std::size_t k = 0; k < verdicts.size(); ++k) {
    const auto& v = verdicts[k];
    all = all && v.bounded();
    sup = std::max(sup, v.sup_L);
    per.push_back({{"z0", vec_json(starts[k])},
                   {"sup_L", v.sup_L},
                   {"bounded", v.bounded()},
                   {"iterate_bounded", v.iterate_bounded},
                   {"full_bounded", v.full_bounded},
                   {"interleave_excess", v.interleave_excess},
                   {"julia_pass", v.julia_pass}});
  }
  art.doc["result"] = {{"c", d.c},
                       {"threshold", kKoranyiThreshold},
                       {"N_power", N},
                       {"c_power", std::pow(d.c, N)},
                       {"sup_L", sup},
                       {"bounded", all},
                       {"iterate_c", d.iterate_c},
                       {"iterate_law", d.iterate_law},
                       {"seeds", per}};
  return kOk;
}

int cmd_verify_all(const RunConfig& cfg, Artifacts& art) {
  auto entries = corpus::default_corpus();
  if (!cfg.map_arg.empty()) entries.push_back({"user_map", load_map(cfg.map_arg)});
  const auto report = verify::run_suite(entries, cfg.rng_seed);
  art.doc["result"] = report.to_json();
  return report.pass() ? kOk : kSuiteFailure;
}

}  // namespace

std::vector<cplx> SeedGrid::points() const {
  std::vector<cplx> out;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double re = nx == 1 ? 0.0 : -a + 2.0 * a * i / (nx - 1);
      out.emplace_back(re, b * (j + 1) / ny);
    }
  return out;
}

maps::MapDescriptor load_map(const std::string& arg) {
  if (arg.empty()) throw ConfigError("--map is required");
  if (arg.rfind("corpus:", 0) == 0) {
    const std::string name = arg.substr(7);
    for (auto& e : corpus::default_corpus())
      if (e.name == name) return e.map;
    throw ConfigError("no corpus map named '" + name + "'");
  }
  const auto first = arg.find_first_not_of(" \t\r\n");
  const std::string text = first != std::string::npos && arg[first] == '{' ? arg : slurp(arg);
  try {
    return maps::from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed map descriptor: ") + e.what());
  }
}

std::string config_hash(const RunConfig& cfg) {
  json j = {{"command", cfg.command}, {"max_n", cfg.max_n}, {"tol", cfg.tol}, {"rng_seed", cfg.rng_seed},
            {"z0", cfg.z0},           {"n_power", cfg.n_power}, {"t", cfg.t_values}};
  if (cfg.seed_grid) j["seed_grid"] = {cfg.seed_grid->a, cfg.seed_grid->b, cfg.seed_grid->nx, cfg.seed_grid->ny};
  if (!cfg.map_arg.empty()) {
    try {
      j["map"] = maps::to_json(load_map(cfg.map_arg));
    } catch (const Error&) {
      j["map"] = cfg.map_arg;
    }
  }
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"valironkit: iteration of analytic self-maps of the disk, half-plane and ball"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  std::string grid, z0, t;
  app.add_option("--map", cfg.map_arg, "Map descriptor: JSON file, inline JSON or corpus:<name>");
  app.add_option("--seed-grid", grid, "Seed grid a,b,nx,ny");
  app.add_option("--max-n", cfg.max_n, "Orbit length");
  app.add_option("--tol", cfg.tol, "Residual tolerance for pass/fail fields");
  app.add_option("--out", cfg.out_dir, "Directory for JSON and CSV artifacts");
  app.add_option("--rng-seed", cfg.rng_seed, "Seed for sampled checks");
  app.add_option("--z0", z0, "Starting point as re,im pairs");
  app.add_option("--n-power", cfg.n_power, "Iterate used by ball-claim (0 = automatic)");
  app.add_option("--t", t, "Heins parameters t1,t2,...");
  for (const char* name : {"classify", "orbit", "valiron", "heins", "ball-claim", "verify-all"})
    app.add_subcommand(name, "")->callback([&cfg, name] { cfg.command = name; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  if (!grid.empty()) cfg.seed_grid = parse_grid(grid);
  if (!z0.empty()) cfg.z0 = parse_numbers(z0, "--z0");
  if (!t.empty()) cfg.t_values = parse_numbers(t, "--t");
  if (cfg.max_n < 1) throw ConfigError("--max-n must be positive");
  if (!(cfg.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (cfg.n_power < 0) throw ConfigError("--n-power must be non-negative");
  if (cfg.z0.size() % 2 != 0) throw ConfigError("--z0 expects re,im pairs");
  if (cfg.command != "verify-all" && cfg.map_arg.empty()) throw ConfigError("--map is required for " + cfg.command);
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Artifacts art(cfg);
  int code = kOk;
  auto fail = [&](int c, const std::string& kind, const std::string& msg) {
    art.doc["error"] = {{"kind", kind}, {"message", msg}};
    err << "valironkit: " << msg << "\n";
    return c;
  };
  try {
    if (cfg.command == "classify") code = cmd_classify(cfg, art);
    else if (cfg.command == "orbit") code = cmd_orbit(cfg, art);
    else if (cfg.command == "valiron") code = cmd_valiron(cfg, art);
    else if (cfg.command == "heins") code = cmd_heins(cfg, art);
    else if (cfg.command == "ball-claim") code = cmd_ball_claim(cfg, art);
    else if (cfg.command == "verify-all") code = cmd_verify_all(cfg, art);
    else code = fail(kConfigError, "config", "unknown command '" + cfg.command + "'");
  } catch (const NotSelfMapError& e) {
    code = fail(kNotSelfMap, "not-a-self-map", e.what());
  } catch (const ConfigError& e) {
    code = fail(kConfigError, "config", e.what());
  } catch (const DomainError& e) {
    code = fail(kConfigError, "domain", e.what());
  } catch (const Inconclusive& e) {
    code = fail(kInconclusive, "inconclusive", e.what());
  } catch (const ConvergenceError& e) {
    code = fail(kInconclusive, "convergence", e.what());
  } catch (const Error& e) {
    code = fail(kInconclusive, "numerical", e.what());
  }
  art.doc["exit_code"] = code;
  try {
    art.flush(out);
  } catch (const ConfigError& e) {
    err << "valironkit: " << e.what() << "\n";
    return kConfigError;
  }
  return code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  if (const char* env = std::getenv("VALIRONKIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*env == '\0' || *end != '\0' || v < 1) {
      err << "valironkit: VALIRONKIT_THREADS must be a positive integer\n";
      return kConfigError;
    }
  }
  try {
    const auto cfg = parse_args(argc, argv, out);
    if (!cfg) return kOk;
    return run(*cfg, out, err);
  } catch (const ConfigError& e) {
    err << "valironkit: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace valironkit::cli
