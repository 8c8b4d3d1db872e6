// SPDX-License-Identifier: Apache-2.0
#include "opalg/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "opalg/errors.hpp"

namespace opalg {
namespace {

using nlohmann::json;

struct Collector {
  std::vector<std::string> errors;
  void add(const std::string& path, const std::string& msg) {
    errors.push_back("config: " + path + ": " + msg);
  }
  void raise_if_any() const {
    if (errors.empty()) return;
    std::string joined;
    for (std::size_t i = 0; i < errors.size(); ++i) {
      if (i) joined += "\n";
      joined += errors[i];
    }
    throw ConfigError(joined);
  }
};

void check_keys(const json& j, const std::string& path,
                const std::set<std::string>& allowed, Collector& errs) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) errs.add(path + "." + it.key(), "unknown key");
}

const json* member(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

void read_int(const json& j, const char* key, const std::string& path, int& out,
              long long lo, long long hi, Collector& errs) {
  const json* v = member(j, key);
  if (!v) return;
  if (!v->is_number_integer()) {
    errs.add(path + "." + key, "expected an integer");
    return;
  }
  const long long n = v->get<long long>();
  if (n < lo || n > hi) {
    errs.add(path + "." + key,
             "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return;
  }
  out = int(n);
}

void read_double(const json& j, const char* key, const std::string& path, double& out,
                 bool require_positive, Collector& errs) {
  const json* v = member(j, key);
  if (!v) return;
  if (!v->is_number()) {
    errs.add(path + "." + key, "expected a number");
    return;
  }
  const double x = v->get<double>();
  if (require_positive && !(x > 0.0)) {
    errs.add(path + "." + key, "must be > 0");
    return;
  }
  out = x;
}

void read_string(const json& j, const char* key, const std::string& path,
                 std::string& out, Collector& errs) {
  const json* v = member(j, key);
  if (!v) return;
  if (!v->is_string()) {
    errs.add(path + "." + key, "expected a string");
    return;
  }
  out = v->get<std::string>();
}

void read_number_array(const json& j, const char* key, const std::string& path,
                       std::optional<std::vector<double>>& out, bool nonnegative,
                       Collector& errs) {
  const json* v = member(j, key);
  if (!v) return;
  if (!v->is_array()) {
    errs.add(path + "." + key, "expected an array of numbers");
    return;
  }
  std::vector<double> vals;
  vals.reserve(v->size());
  for (std::size_t i = 0; i < v->size(); ++i) {
    const json& el = (*v)[i];
    if (!el.is_number()) {
      errs.add(path + "." + key + "[" + std::to_string(i) + "]", "expected a number");
      return;
    }
    const double x = el.get<double>();
    if (nonnegative && x < 0.0) {
      errs.add(path + "." + key + "[" + std::to_string(i) + "]", "must be >= 0");
      return;
    }
    vals.push_back(x);
  }
  out = std::move(vals);
}

const std::set<std::string> kSuiteNames{"inequalities", "gns", "catalog", "dynamics"};
const std::set<std::string> kScheduleNames{"harmonic", "geometric4", "ones"};

void parse_inequalities(const json& j, InequalitiesConfig& c, Collector& errs) {
  const std::string p = "$.inequalities";
  check_keys(j, p,
             {"schwarz_pairs", "triangle_pairs", "homogeneity_samples",
              "bound_samples", "map_samples", "weights"},
             errs);
  read_int(j, "schwarz_pairs", p, c.schwarz_pairs, 1, 10'000'000, errs);
  read_int(j, "triangle_pairs", p, c.triangle_pairs, 1, 10'000'000, errs);
  read_int(j, "homogeneity_samples", p, c.homogeneity_samples, 1, 10'000'000, errs);
  read_int(j, "bound_samples", p, c.bound_samples, 1, 10'000'000, errs);
  read_int(j, "map_samples", p, c.map_samples, 1, 10'000'000, errs);
  read_number_array(j, "weights", p, c.weights, /*nonnegative=*/true, errs);
  if (c.weights && c.weights->size() != 201)
    errs.add(p + ".weights", "must carry exactly 201 samples (the fixture grid)");
}

void parse_gns(const json& j, GnsConfig& c, Collector& errs) {
  const std::string p = "$.gns";
  check_keys(j, p, {"invariance_samples", "representation_samples"}, errs);
  read_int(j, "invariance_samples", p, c.invariance_samples, 1, 1'000'000, errs);
  read_int(j, "representation_samples", p, c.representation_samples, 1, 1'000'000, errs);
}

void parse_catalog(const json& j, CatalogConfig& c, Collector& errs) {
  const std::string p = "$.catalog";
  check_keys(j, p,
             {"projector_trials", "projector_dim", "kernel_points", "bound_samples",
              "adjoint_samples"},
             errs);
  read_int(j, "projector_trials", p, c.projector_trials, 1, 1'000'000, errs);
  read_int(j, "projector_dim", p, c.projector_dim, 2, 500, errs);
  read_int(j, "kernel_points", p, c.kernel_points, 9, 100'000, errs);
  read_int(j, "bound_samples", p, c.bound_samples, 1, 1'000'000, errs);
  read_int(j, "adjoint_samples", p, c.adjoint_samples, 1, 1'000'000, errs);
}

void parse_dynamics(const json& j, DynamicsConfig& c, Collector& errs) {
  const std::string p = "$.dynamics";
  check_keys(j, p,
             {"half_width", "block_dim", "band", "delta", "lambda_schedule",
              "lambda_values", "up_weight", "down_weight", "cosine_band",
              "cosine_delta", "cosine_lambda_schedule"},
             errs);
  read_int(j, "half_width", p, c.half_width, 1, 64, errs);
  read_int(j, "block_dim", p, c.block_dim, 1, 32, errs);
  read_int(j, "band", p, c.band, 0, 64, errs);
  read_double(j, "delta", p, c.delta, /*require_positive=*/true, errs);
  read_string(j, "lambda_schedule", p, c.lambda_schedule, errs);
  read_number_array(j, "lambda_values", p, c.lambda_values, /*nonnegative=*/true, errs);
  read_double(j, "up_weight", p, c.up_weight, true, errs);
  read_double(j, "down_weight", p, c.down_weight, true, errs);
  read_int(j, "cosine_band", p, c.cosine_band, 0, 64, errs);
  read_double(j, "cosine_delta", p, c.cosine_delta, true, errs);
  read_string(j, "cosine_lambda_schedule", p, c.cosine_lambda_schedule, errs);

  if (!kScheduleNames.count(c.lambda_schedule))
    errs.add(p + ".lambda_schedule", "unknown schedule '" + c.lambda_schedule + "'");
  if (!kScheduleNames.count(c.cosine_lambda_schedule))
    errs.add(p + ".cosine_lambda_schedule",
             "unknown schedule '" + c.cosine_lambda_schedule + "'");
  if (c.band > c.half_width) errs.add(p + ".band", "band must not exceed half_width");
  if (c.cosine_band > c.half_width)
    errs.add(p + ".cosine_band", "cosine_band must not exceed half_width");
  if (c.lambda_values && int(c.lambda_values->size()) != c.half_width + 1)
    errs.add(p + ".lambda_values",
             "must carry half_width + 1 = " + std::to_string(c.half_width + 1) +
                 " values (lambda_{|j|}, j = 0..half_width)");
}

}  // namespace

std::vector<std::string> SuiteConfig::resolved_suites() const {
  std::set<std::string> names;
  for (const auto& s : suites) {
    if (s == "all") {
      names.insert(kSuiteNames.begin(), kSuiteNames.end());
    } else if (kSuiteNames.count(s)) {
      names.insert(s);
    } else {
      throw ConfigError("config: $.suites: unknown suite '" + s + "'");
    }
  }
  if (names.empty()) throw ConfigError("config: $.suites: no suites selected");
  return {names.begin(), names.end()};
}

SuiteConfig parse_config_text(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: $: expected a JSON object");

  Collector errs;
  SuiteConfig cfg;
  check_keys(doc, "$",
             {"suites", "seed", "out_dir", "tolerance_scale", "inequalities", "gns",
              "catalog", "dynamics"},
             errs);

  if (const json* v = member(doc, "suites")) {
    if (!v->is_array()) {
      errs.add("$.suites", "expected an array of suite names");
    } else {
      cfg.suites.clear();
      for (std::size_t i = 0; i < v->size(); ++i) {
        const json& el = (*v)[i];
        if (!el.is_string()) {
          errs.add("$.suites[" + std::to_string(i) + "]", "expected a string");
          continue;
        }
        const std::string name = el.get<std::string>();
        if (name != "all" && !kSuiteNames.count(name))
          errs.add("$.suites[" + std::to_string(i) + "]", "unknown suite '" + name + "'");
        else
          cfg.suites.push_back(name);
      }
    }
  }
  if (const json* v = member(doc, "seed")) {
    if (v->is_number_unsigned())
      cfg.seed = v->get<std::uint64_t>();
    else if (v->is_number_integer() && v->get<long long>() >= 0)
      cfg.seed = std::uint64_t(v->get<long long>());
    else
      errs.add("$.seed", "expected a nonnegative integer");
  }
  read_string(doc, "out_dir", "$", cfg.out_dir, errs);
  read_double(doc, "tolerance_scale", "$", cfg.tolerance_scale, true, errs);

  if (const json* v = member(doc, "inequalities")) {
    if (!v->is_object())
      errs.add("$.inequalities", "expected an object");
    else
      parse_inequalities(*v, cfg.inequalities, errs);
  }
  if (const json* v = member(doc, "gns")) {
    if (!v->is_object())
      errs.add("$.gns", "expected an object");
    else
      parse_gns(*v, cfg.gns, errs);
  }
  if (const json* v = member(doc, "catalog")) {
    if (!v->is_object())
      errs.add("$.catalog", "expected an object");
    else
      parse_catalog(*v, cfg.catalog, errs);
  }
  if (const json* v = member(doc, "dynamics")) {
    if (!v->is_object())
      errs.add("$.dynamics", "expected an object");
    else
      parse_dynamics(*v, cfg.dynamics, errs);
  }

  errs.raise_if_any();
  return cfg;
}

SuiteConfig load_config_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config: cannot read file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace opalg
