#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "valironkit/cli.hpp"
#include "valironkit/types.hpp"

using namespace valironkit;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "valironkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const char* kTwoZPlusI =
    R"({"domain":"halfplane","N":1,"expr":{"op":"add","args":[{"op":"multiply","args":[{"op":"constant","params":{"value":2}},{"op":"variable"}]},{"op":"constant","params":{"value":{"re":0,"im":1}}}]}})";
const char* kThreeZPlusOne =
    R"({"domain":"halfplane","N":1,"expr":{"op":"add","args":[{"op":"multiply","args":[{"op":"constant","params":{"value":3}},{"op":"variable"}]},{"op":"constant","params":{"value":1}}]}})";
const char* kZOverTwoMinusZ =
    R"({"domain":"disk","N":1,"expr":{"op":"divide","args":[{"op":"variable"},{"op":"subtract","args":[{"op":"constant","params":{"value":2}},{"op":"variable"}]}]}})";
const char* kTwoZOnDisk =
    R"({"domain":"disk","N":1,"expr":{"op":"multiply","args":[{"op":"constant","params":{"value":2}},{"op":"variable"}]}})";

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("valironkit_test_cli_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("classify reports hyperbolic and elliptic maps") {
  const auto h = run_cli({"classify", "--map", "corpus:disk_mobius_0.5"});
  REQUIRE(h.code == 0);
  CHECK(h.doc()["result"]["kind"] == "hyperbolic");
  CHECK(h.doc()["result"]["alpha"].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-8));

  const auto e = run_cli({"classify", "--map", kZOverTwoMinusZ});
  REQUIRE(e.code == 0);
  const auto r = e.doc()["result"];
  CHECK(r["kind"] == "elliptic");
  CHECK(r["lambda"]["re"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(r["lambda"]["im"].get<double>()) < 1e-12);
}

TEST_CASE("classify of ball maps") {
  const auto h = run_cli({"classify", "--map", "corpus:ball_claim_A8"});
  REQUIRE(h.code == 0);
  CHECK(h.doc()["result"]["kind"] == "hyperbolic");
  CHECK(h.doc()["result"]["c"].get<double>() == doctest::Approx(0.125).epsilon(1e-8));
  const auto e = run_cli({"classify", "--map", "corpus:ball_half"});
  REQUIRE(e.code == 0);
  CHECK(e.doc()["result"]["kind"] == "elliptic");
  CHECK(e.doc()["result"]["jacobian_eigenvalues"][0]["re"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"classify", "--map", "{not json"}).code == cli::kConfigError);
  CHECK(run_cli({"classify", "--map", "/nonexistent/map.json"}).code == cli::kConfigError);
  CHECK(run_cli({"classify"}).code == cli::kConfigError);
  CHECK(run_cli({"frobnicate"}).code == cli::kConfigError);
  CHECK(run_cli({"classify", "--map", "corpus:disk_mobius_0.5", "--tol", "-1"}).code == cli::kConfigError);
  CHECK(run_cli({"valiron", "--map", kTwoZPlusI, "--seed-grid", "1,2,0,3"}).code == cli::kConfigError);
  CHECK(run_cli({"classify", "--map", kTwoZOnDisk}).code == cli::kNotSelfMap);
  CHECK(run_cli({"ball-claim", "--map", "corpus:ball_half"}).code == cli::kInconclusive);
  CHECK(run_cli({"--help"}).code == cli::kOk);
}

TEST_CASE("every output embeds version, config hash and seed") {
  const auto a = run_cli({"classify", "--map", "corpus:disk_mobius_0.5", "--rng-seed", "7"});
  const auto d = a.doc();
  CHECK(d["version"] == VALIRONKIT_VERSION);
  CHECK(d["rng_seed"] == 7);
  CHECK(d["config_hash"].get<std::string>().size() == 16);
  const auto b = run_cli({"classify", "--map", "corpus:disk_mobius_0.5", "--rng-seed", "8"});
  CHECK(b.doc()["config_hash"] != d["config_hash"]);
  // The hash follows the map, not how it was spelled.
  cli::RunConfig c1, c2;
  c1.command = c2.command = "classify";
  c1.map_arg = "corpus:halfplane_2z_plus_i";
  c2.map_arg = kTwoZPlusI;
  CHECK(cli::config_hash(c1) == cli::config_hash(c2));
}

TEST_CASE("valiron outputs and theta field") {
  const auto dir = scratch("valiron");
  const auto r = run_cli({"valiron", "--map", kTwoZPlusI, "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto res = r.doc()["result"];
  CHECK(res["A"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(res["b_inf"].get<double>()) < 1e-8);
  CHECK(res["theta"].get<double>() == doctest::Approx(kPi / 2.0).epsilon(1e-10));
  for (const char* key : {"residual_max", "residual_mean", "angular_derivative", "n_max_used"})
    CHECK(res.contains(key));
  CHECK(std::filesystem::exists(dir / "valiron.json"));
  CHECK(read_file(dir / "orbit.csv").find("n,re,im,abs,arg,step_d,ratio_re,ratio_im") != std::string::npos);

  // Automorphism 3z + 1 fixes -1/2 on the boundary; theta(z0) = Arg(z0 + 1/2).
  const auto dir2 = scratch("theta");
  REQUIRE(run_cli({"valiron", "--map", kThreeZPlusOne, "--seed-grid", "1,2,3,3", "--out", dir2.string()}).code == 0);
  std::istringstream csv(read_file(dir2 / "theta_field.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("re_z0", 0) == 0) continue;
    double re, im, th;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &re, &im, &th) == 3);
    CHECK(th == doctest::Approx(std::arg(cplx(re + 0.5, im))).epsilon(1e-10));
    ++rows;
  }
  CHECK(rows == 9);
}

TEST_CASE("heins sweep") {
  const auto r = run_cli({"heins", "--map", kTwoZPlusI, "--t", "0.5,1.0,1.5,2.5"});
  REQUIRE(r.code == 0);
  const auto s = r.doc()["result"]["samples"];
  REQUIRE(s.size() == 4);
  CHECK(s[0]["kind"] == "interior-fixed");
  CHECK(s[1]["kind"] == "interior-fixed");
  CHECK(s[2]["kind"] == "interior-fixed");
  CHECK(s[3]["kind"] == "infinity-dw");
  CHECK(s[1]["value"]["im"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("ball claim") {
  const auto a = run_cli({"ball-claim", "--map", "corpus:siegel_claim_A8", "--seed-grid", "1,2,2,2"});
  REQUIRE(a.code == 0);
  const auto r = a.doc()["result"];
  CHECK(r["bounded"] == true);
  CHECK(r["c"].get<double>() == doctest::Approx(0.125).epsilon(1e-3));
  CHECK(r["threshold"].get<double>() == doctest::Approx(0.17157287525381).epsilon(1e-12));
  CHECK(r["N_power"] == 1);
  CHECK(r["seeds"].size() == 5);

  const auto b = run_cli({"ball-claim", "--map", "corpus:siegel_claim_A2", "--n-power", "3"});
  REQUIRE(b.code == 0);
  CHECK(b.doc()["result"]["bounded"] == true);
  CHECK(b.doc()["result"]["N_power"] == 3);
  // Automatic choice of the iterate.
  CHECK(run_cli({"ball-claim", "--map", "corpus:siegel_claim_A2"}).doc()["result"]["N_power"] == 3);
}

TEST_CASE("verify-all") {
  const auto ok = run_cli({"verify-all"});
  CHECK(ok.code == 0);
  CHECK(ok.doc()["result"]["pass"] == true);
  const auto bad = run_cli({"verify-all", "--map", kTwoZOnDisk});
  CHECK(bad.code == cli::kSuiteFailure);
  bool found = false;
  const json report = bad.doc();
  for (const auto& c : report["result"]["checks"])
    if (c["map"] == "user_map" && c["invariant"] == "self-map" && c["pass"] == false) found = true;
  CHECK(found);
}

TEST_CASE("fixed configuration gives byte-identical artifacts") {
  for (const char* cmd : {"orbit", "valiron", "verify-all"}) {
    const auto d1 = scratch(std::string("det1_") + cmd), d2 = scratch(std::string("det2_") + cmd);
    std::vector<std::string> base{cmd, "--seed-grid", "1,2,2,2", "--rng-seed", "99"};
    if (std::string(cmd) != "verify-all") base.insert(base.end(), {"--map", kTwoZPlusI});
    auto a1 = base, a2 = base;
    a1.insert(a1.end(), {"--out", d1.string()});
    a2.insert(a2.end(), {"--out", d2.string()});
    const auto r1 = run_cli(a1), r2 = run_cli(a2);
    CHECK(r1.out == r2.out);
    for (const auto& entry : std::filesystem::directory_iterator(d1))
      CHECK(read_file(entry.path()) == read_file(d2 / entry.path().filename()));
  }
}

TEST_CASE("seed grid layout") {
  const cli::SeedGrid g{1.0, 2.0, 3, 2};
  const auto p = g.points();
  REQUIRE(p.size() == 6);
  CHECK(p[0] == cplx(-1.0, 1.0));
  CHECK(p[2] == cplx(1.0, 1.0));
  CHECK(p[5] == cplx(1.0, 2.0));
  CHECK(cli::SeedGrid{0.5, 1.0, 1, 1}.points()[0] == cplx(0.0, 1.0));
}
