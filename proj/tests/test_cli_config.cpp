// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "opalg/config.hpp"
#include "opalg/errors.hpp"
#include "opalg/report.hpp"

using namespace opalg;

namespace {

std::string error_text(const std::string& doc) {
  try {
    parse_config_text(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("empty document yields the default configuration") {
  const SuiteConfig cfg = parse_config_text("{}");
  CHECK(cfg.seed == 7);
  CHECK(cfg.out_dir == "out");
  CHECK(cfg.tolerance_scale == 1.0);
  CHECK(cfg.suites == std::vector<std::string>{"all"});
  CHECK(cfg.dynamics.half_width == 12);
  CHECK(cfg.dynamics.lambda_schedule == "geometric4");
  CHECK(cfg.inequalities.schwarz_pairs == 1600);
  CHECK_FALSE(cfg.inequalities.weights.has_value());
}

TEST_CASE("every field is reachable from one document") {
  const std::string doc = R"({
    "suites": ["gns", "dynamics"],
    "seed": 12345,
    "out_dir": "results",
    "tolerance_scale": 2.5,
    "inequalities": {"schwarz_pairs": 10, "triangle_pairs": 20,
                     "homogeneity_samples": 30, "bound_samples": 40,
                     "map_samples": 50},
    "gns": {"invariance_samples": 7, "representation_samples": 8},
    "catalog": {"projector_trials": 9, "projector_dim": 10,
                "kernel_points": 99, "bound_samples": 11,
                "adjoint_samples": 12},
    "dynamics": {"half_width": 6, "block_dim": 3, "band": 1,
                 "delta": 0.5, "lambda_schedule": "harmonic",
                 "lambda_values": [1.0, 0.5, 0.25, 0.1, 0.05, 0.01, 0.001],
                 "up_weight": 0.25, "down_weight": 4.0,
                 "cosine_band": 2, "cosine_delta": 0.125,
                 "cosine_lambda_schedule": "ones"}
  })";
  const SuiteConfig cfg = parse_config_text(doc);
  CHECK(cfg.suites == std::vector<std::string>{"gns", "dynamics"});
  CHECK(cfg.seed == 12345);
  CHECK(cfg.out_dir == "results");
  CHECK(cfg.tolerance_scale == 2.5);
  CHECK(cfg.inequalities.schwarz_pairs == 10);
  CHECK(cfg.inequalities.map_samples == 50);
  CHECK(cfg.gns.representation_samples == 8);
  CHECK(cfg.catalog.kernel_points == 99);
  CHECK(cfg.dynamics.half_width == 6);
  CHECK(cfg.dynamics.block_dim == 3);
  CHECK(cfg.dynamics.lambda_schedule == "harmonic");
  REQUIRE(cfg.dynamics.lambda_values.has_value());
  CHECK(cfg.dynamics.lambda_values->size() == 7);
  CHECK(cfg.dynamics.up_weight == 0.25);
  CHECK(cfg.dynamics.cosine_lambda_schedule == "ones");
}

TEST_CASE("unknown keys are rejected with their JSON path") {
  CHECK(error_text(R"({"sweeps": 3})").find("$.sweeps") != std::string::npos);
  CHECK(error_text(R"({"gns": {"samples": 3}})").find("$.gns.samples") !=
        std::string::npos);
}

TEST_CASE("all problems are collected into one message") {
  const std::string msg = error_text(
      R"({"tolerance_scale": -1, "catalog": {"projector_dim": 1}, "flag": true})");
  CHECK(msg.find("$.tolerance_scale") != std::string::npos);
  CHECK(msg.find("must be > 0") != std::string::npos);
  CHECK(msg.find("$.catalog.projector_dim") != std::string::npos);
  CHECK(msg.find("out of range [2, 500]") != std::string::npos);
  CHECK(msg.find("$.flag") != std::string::npos);
  CHECK(msg.find('\n') != std::string::npos);  // one line per problem
}

TEST_CASE("seed accepts the full unsigned range and nothing else") {
  CHECK(parse_config_text(R"({"seed": 18446744073709551615})").seed ==
        18446744073709551615ull);
  CHECK(parse_config_text(R"({"seed": 0})").seed == 0);
  CHECK(error_text(R"({"seed": -3})").find("$.seed") != std::string::npos);
  CHECK(error_text(R"({"seed": 1.5})").find("nonnegative integer") !=
        std::string::npos);
}

TEST_CASE("domain-specific shape constraints") {
  SUBCASE("weighted-form density must match the fixture grid") {
    std::string doc = R"({"inequalities": {"weights": [)";
    for (int i = 0; i < 200; ++i) doc += i ? ",1" : "1";
    doc += "]}}";
    CHECK(error_text(doc).find("201") != std::string::npos);
    CHECK(error_text(R"({"inequalities": {"weights": [1, -1]}})")
              .find("must be >= 0") != std::string::npos);
  }
  SUBCASE("explicit lambda values must cover j = 0..half_width") {
    const std::string msg = error_text(
        R"({"dynamics": {"half_width": 3, "lambda_values": [1, 0.5]}})");
    CHECK(msg.find("$.dynamics.lambda_values") != std::string::npos);
    CHECK(msg.find("half_width + 1 = 4") != std::string::npos);
  }
  SUBCASE("bands cannot exceed the truncation") {
    CHECK(error_text(R"({"dynamics": {"half_width": 2, "band": 3}})")
              .find("$.dynamics.band") != std::string::npos);
    CHECK(error_text(R"({"dynamics": {"half_width": 2, "cosine_band": 5}})")
              .find("$.dynamics.cosine_band") != std::string::npos);
  }
  SUBCASE("schedules are drawn from the named set") {
    CHECK(error_text(R"({"dynamics": {"lambda_schedule": "fibonacci"}})")
              .find("unknown schedule 'fibonacci'") != std::string::npos);
  }
  SUBCASE("suite names are validated element by element") {
    CHECK(error_text(R"({"suites": ["gns", "bogus"]})").find("$.suites[1]") !=
          std::string::npos);
    CHECK(error_text(R"({"suites": [42]})").find("expected a string") !=
          std::string::npos);
  }
}

TEST_CASE("suite resolution expands, deduplicates, and sorts") {
  SuiteConfig cfg;
  CHECK(cfg.resolved_suites() ==
        std::vector<std::string>{"catalog", "dynamics", "gns", "inequalities"});
  cfg.suites = {"gns", "catalog", "gns"};
  CHECK(cfg.resolved_suites() == std::vector<std::string>{"catalog", "gns"});
  cfg.suites = {"bogus"};
  CHECK_THROWS_AS(cfg.resolved_suites(), ConfigError);
  cfg.suites = {};
  CHECK_THROWS_AS(cfg.resolved_suites(), ConfigError);
}

TEST_CASE("json report serialization is deterministic") {
  auto make_reports = [] {
    CheckRecord c1{"beta", "anchor-b", "digest-1", {{"z", 0.5}, {"a", 1.0}}, 1e-9,
                   true};
    CheckRecord c2{"alpha", "anchor-a", "digest-2", {{"m", 1e-14}}, 1e-12, false};
    SuiteReport s1{"gns", 7, "rng-x", 123.456, {c1}};
    SuiteReport s2{"catalog", 7, "rng-x", 99.0, {c2}};
    return std::vector<SuiteReport>{s1, s2};  // deliberately unsorted
  };
  const std::string a = reports_to_json(make_reports(), false);
  const std::string b = reports_to_json(make_reports(), false);
  CHECK(a == b);
  CHECK(a.find("wall_ms") == std::string::npos);
  CHECK(reports_to_json(make_reports(), true).find("wall_ms") != std::string::npos);
  // suites sorted by name, measured keys sorted within a record
  CHECK(a.find("\"catalog\"") < a.find("\"gns\""));
  CHECK(a.find("\"a\"") < a.find("\"z\""));
  CHECK(a.find("1e-14") != std::string::npos);
}

TEST_CASE("doubles render as their shortest round trip") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1.0");
  CHECK(format_double(-2.0) == "-2.0");
  CHECK(format_double(1e-14) == "1e-14");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("fnv1a64 matches the reference constants") {
  CHECK(fnv1a64("") == 14695981039346656037ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  // independent reimplementation
  auto ref = [](const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return h;
  };
  for (const std::string s : {"gns", "dynamics", "inequalities", "catalog", "xyz"})
    CHECK(fnv1a64(s) == ref(s));
}

TEST_CASE("csv rendering is plain comma-newline") {
  const CsvTable t{"decay", {"n", "value"}, {{"1", "0.5"}, {"2", "0.25"}}};
  CHECK(csv_to_string(t) == "n,value\n1,0.5\n2,0.25\n");
}
