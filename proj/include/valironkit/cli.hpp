#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "valironkit/maps.hpp"

// Command-line driver. Every command prints one JSON document to stdout and,
// with --out, writes it plus its CSV artifacts into that directory. Outputs
// carry the tool version, a hash of the configuration and the rng seed.

namespace valironkit::cli {

enum ExitCode : int {
  kOk = 0,
  kSuiteFailure = 1,
  kConfigError = 2,
  kInconclusive = 3,
  kNotSelfMap = 4,
};

/// --seed-grid a,b,nx,ny: real parts evenly spaced on [-a, a], imaginary
/// parts b (k + 1) / ny for k < ny.
struct SeedGrid {
  double a = 1.0;
  double b = 2.0;
  int nx = 3;
  int ny = 3;
  std::vector<cplx> points() const;
};

struct RunConfig {
  std::string command;
  std::string map_arg;  // file path, inline JSON or corpus:<name>
  std::optional<SeedGrid> seed_grid;
  int max_n = 200;
  double tol = 1e-6;
  std::string out_dir;
  std::uint64_t rng_seed = 20240101;
  std::vector<double> z0;  // re, im pairs; empty selects the barycenter
  int n_power = 0;         // 0 picks the smallest N with c^N below the threshold
  std::vector<double> t_values{0.5, 1.0, 1.5, 2.5};
};

/// Throws ConfigError on malformed arguments. Returns nullopt after --help.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

maps::MapDescriptor load_map(const std::string& arg);

/// FNV-1a over the canonical JSON of the configuration (output directory excluded).
std::string config_hash(const RunConfig& cfg);

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_args + run with the exit-code contract applied to every error.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace valironkit::cli
