// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace opalg {

// One verified statement. `anchor` names the mathematical claim being
// exercised (e.g. "schwarz-constant-2"), so a failing record can be traced
// to the inequality it violates rather than to a line of suite code.
// `inputs_digest` fingerprints the inputs (dimensions, grids, seeds) that
// produced the measurement.
struct CheckRecord {
  std::string name;
  std::string anchor;
  std::string inputs_digest;
  std::map<std::string, double> measured;  // named measured quantities
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::string rng_algorithm;
  double wall_ms = 0.0;  // excluded from byte-identity comparisons
  std::vector<CheckRecord> checks;

  int passed() const;
  int failed() const;
  bool all_pass() const { return failed() == 0; }
};

// Named CSV payload emitted alongside the JSON report; tables with the same
// name produced by different suites are concatenated (headers must agree).
struct CsvTable {
  std::string name;  // file stem, e.g. "decay" -> decay.csv
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// 64-bit FNV-1a; also used to derive per-suite RNG streams from the seed.
std::uint64_t fnv1a64(const std::string& bytes);

// fnv1a64 rendered as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

// Shortest decimal round-trip rendering; used by both the JSON and CSV
// writers so reruns are byte-stable.
std::string format_double(double v);

// Reports sorted by suite name, fixed field order, shortest round-trip
// numbers: two runs with equal seed and config serialize identically.
// The per-suite wall_ms line is the only nondeterministic field; pass
// include_timing = false to omit it.
std::string reports_to_json(std::vector<SuiteReport> reports,
                            bool include_timing = true);

std::string csv_to_string(const CsvTable& table);

// Creates parent directories as needed; throws ConfigError on I/O failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace opalg
