#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "valironkit/corpus.hpp"

// Invariant suite run over a map corpus. Every check records the measured
// violation next to its tolerance so reports stay useful when they fail.

namespace valironkit::verify {

struct Check {
  std::string map;
  std::string invariant;
  double violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct Report {
  std::vector<Check> checks;
  bool pass() const;
  int failures() const;
  nlohmann::json to_json() const;
};

/// max d(phi(a), phi(b)) - d(a, b) over sampled pairs.
double distance_excess(const maps::MapDescriptor& m, int pairs, std::uint64_t seed);
/// max Q(phi(a), phi(b)) / Q(a, b) - 1 over sampled pairs.
double q_excess(const maps::MapDescriptor& m, int pairs, std::uint64_t seed);

/// All invariants that apply to one map.
std::vector<Check> check_map(const corpus::Entry& entry, std::uint64_t seed, int pairs = 10000);

/// Maps are checked in parallel; the report keeps corpus order.
Report run_suite(const std::vector<corpus::Entry>& entries, std::uint64_t seed, int pairs = 10000);

}  // namespace valironkit::verify
