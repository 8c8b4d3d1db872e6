// SPDX-License-Identifier: Apache-2.0
//
// Command line runner for the verification suites. Exit codes: 0 when every
// check passes, 1 when any check fails, 2 when the configuration (file or
// flags) is invalid.
#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opalg/config.hpp"
#include "opalg/errors.hpp"
#include "opalg/suites.hpp"

namespace {

int run_with(const opalg::SuiteConfig& cfg) {
  const opalg::RunOutcome out = opalg::run_suites(cfg);

  for (const opalg::SuiteReport& r : out.reports) {
    std::printf("%-13s %4d/%-4zu checks passed  seed=%llu  %.0f ms  %s\n",
                r.suite.c_str(), r.passed(), r.checks.size(),
                static_cast<unsigned long long>(r.seed), r.wall_ms,
                r.all_pass() ? "ok" : "FAIL");
    for (const opalg::CheckRecord& c : r.checks)
      if (!c.pass)
        std::printf("  failed: %s [%s] tol=%g\n", c.name.c_str(), c.anchor.c_str(),
                    c.tolerance);
  }
  for (const auto& file : out.files)
    std::printf("wrote %s/%s\n", cfg.out_dir.c_str(), file.first.c_str());

  return out.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification suites for C*-valued invariant sesquilinear forms"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
  auto* opt_config =
      app.add_option("--config", config_path, "JSON configuration file")
          ->check(CLI::ExistingFile);
  auto* opt_seed = app.add_option("--seed", seed, "seed override");
  auto* opt_out = app.add_option("--out", out_dir, "output directory override");
  auto* opt_tol =
      app.add_option("--tol", tol_scale, "scale factor applied to every tolerance");

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"inequalities", "Schwarz / triangle / homogeneity / functional bounds"},
      {"gns", "quotient construction, representation, reconstruction limits"},
      {"catalog", "worked example maps and forms"},
      {"dynamics", "weighted shift decay and transitivity witnesses"},
      {"all", "every suite"},
      {"run", "suites listed in the configuration (default: all)"},
  };
  for (const auto& [name, desc] : subs) app.add_subcommand(name, desc)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    opalg::SuiteConfig cfg;
    if (*opt_config) cfg = opalg::load_config_file(config_path);
    if (*opt_seed) cfg.seed = seed;
    if (*opt_out) cfg.out_dir = out_dir;
    if (*opt_tol) {
      if (!(tol_scale > 0.0))
        throw opalg::ConfigError("config: --tol: positive value required");
      cfg.tolerance_scale = tol_scale;
    }
    const std::string chosen = app.get_subcommands().front()->get_name();
    if (chosen != "run") cfg.suites = {chosen};
    cfg.resolved_suites();  // surface bad suite lists before any work runs
    return run_with(cfg);
  } catch (const opalg::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
