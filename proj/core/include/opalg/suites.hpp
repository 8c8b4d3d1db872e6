// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "opalg/config.hpp"
#include "opalg/report.hpp"

namespace opalg {

// Each suite builds its fixtures, runs the checks, and returns the records
// plus any CSV payloads (the dynamics decay table, approximate-identity
// residual traces). Suites draw from an RNG stream derived from the seed and
// the suite name, so a suite run alone reproduces its slice of a full run.

struct SuiteResult {
  SuiteReport report;
  std::vector<CsvTable> tables;
};

SuiteResult run_inequalities(const SuiteConfig& cfg);
SuiteResult run_gns(const SuiteConfig& cfg);
SuiteResult run_catalog(const SuiteConfig& cfg);
SuiteResult run_dynamics(const SuiteConfig& cfg);

struct RunOutcome {
  std::vector<SuiteReport> reports;
  bool all_pass = false;
  // filename -> content, exactly as written under cfg.out_dir
  // (report.json first, then one file per CSV table).
  std::vector<std::pair<std::string, std::string>> files;
};

// Runs cfg.resolved_suites() in name order and merges the artifacts.
// Set write_files = false to keep everything in memory.
RunOutcome run_suites(const SuiteConfig& cfg, bool write_files = true);

}  // namespace opalg
