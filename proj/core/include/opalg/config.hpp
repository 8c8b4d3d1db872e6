// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace opalg {

// Scenario parameters for each suite. Defaults reproduce the acceptance
// scenarios; every field can be overridden from a single JSON document.
// Unknown keys are rejected so typos cannot silently fall back to defaults.

struct InequalitiesConfig {
  int schwarz_pairs = 1600;    // random pairs per form
  int triangle_pairs = 10000;  // random pairs per form
  int homogeneity_samples = 2000;
  int bound_samples = 400;     // declared-bound sampling per form
  int map_samples = 10000;     // samples per linear-map norm fixture
  // Optional replacement for the weighted-form density v >= 0; must match
  // the 201-point default grid when supplied.
  std::optional<std::vector<double>> weights;
};

struct GnsConfig {
  int invariance_samples = 40;
  int representation_samples = 60;
};

struct CatalogConfig {
  int projector_trials = 100;
  int projector_dim = 20;
  int kernel_points = 2001;  // grid size for the linear-kernel fixture
  int bound_samples = 300;   // declared-bound sampling per map
  int adjoint_samples = 60;
};

struct DynamicsConfig {
  int half_width = 12;  // J: blocks run j = -J..J
  int block_dim = 2;
  int band = 2;         // k: right supports confined to |j| <= k
  double delta = 1e-3;
  std::string lambda_schedule = "geometric4";
  // Explicit weights lambda_{|j|} for j = 0..J; overrides the named schedule.
  std::optional<std::vector<double>> lambda_values;
  double up_weight = 0.5;
  double down_weight = 2.0;
  int cosine_band = 0;
  double cosine_delta = 0.03;
  std::string cosine_lambda_schedule = "harmonic";
};

struct SuiteConfig {
  std::vector<std::string> suites{"all"};
  std::uint64_t seed = 7;
  std::string out_dir = "out";
  // Multiplies every check tolerance; > 0. The CLI --tol flag sets it.
  double tolerance_scale = 1.0;

  InequalitiesConfig inequalities;
  GnsConfig gns;
  CatalogConfig catalog;
  DynamicsConfig dynamics;

  // Expands "all", validates and deduplicates, returns sorted names.
  // Throws ConfigError on an unknown name or an empty result.
  std::vector<std::string> resolved_suites() const;
};

// Parses and validates a JSON document. All problems are collected and
// reported together, one per line, in the thrown ConfigError.
SuiteConfig parse_config_text(const std::string& json_text);

// Reads the file, then parses. Throws ConfigError if unreadable.
SuiteConfig load_config_file(const std::string& path);

}  // namespace opalg
