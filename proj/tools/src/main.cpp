#include <algorithm>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "holocurve/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace holocurve::cli;
  CLI::App app{"holocurve: holomorphic superposition and ODE solution-map toolkit"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  CommandOptions opts;
  std::string config, out, suite;
  std::uint64_t seed = 0;

  std::vector<CLI::Option*> config_opts, seed_opts, out_opts, suite_opts;
  auto add_common = [&](CLI::App* sub) {
    config_opts.push_back(sub->add_option("--config", config, "job configuration (JSON)"));
    seed_opts.push_back(sub->add_option("--seed", seed, "RNG seed recorded in the report"));
    out_opts.push_back(sub->add_option("--out", out, "output path (default: stdout)"));
  };

  CLI::App* solve = app.add_subcommand("solve", "solve y' = phi(t, y), y(t0) = xi by Picard iteration");
  add_common(solve);
  solve->add_flag("--force", opts.force, "iterate even when the tube condition fails");

  CLI::App* sens = app.add_subcommand("sensitivity", "directional derivative of the solution map");
  add_common(sens);
  sens->add_flag("--force", opts.force, "iterate even when the tube condition fails");

  CLI::App* verify = app.add_subcommand("verify", "run verification suites and write a CSV table");
  add_common(verify);
  suite_opts.push_back(verify->add_option("--suite", suite, "contour, superpose, ode, chi or all"));

  CLI::App* witness = app.add_subcommand("chi-witness", "point of the unit ball where chi exceeds a target");
  witness->add_option("--target", opts.target, "value chi must exceed")->capture_default_str();
  witness->add_option("--dimension", opts.dimension, "truncation dimension")->capture_default_str();
  out_opts.push_back(witness->add_option("--out", out, "output path (default: stdout)"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : kExitConfig;
  }

  auto given = [](const std::vector<CLI::Option*>& options) {
    return std::any_of(options.begin(), options.end(), [](const CLI::Option* o) { return o->count() > 0; });
  };
  if (given(config_opts)) opts.config = config;
  if (given(seed_opts)) opts.seed = seed;
  if (given(out_opts)) opts.out = out;
  if (given(suite_opts)) opts.suite = suite;

  if (*solve) return cmd_solve(opts, std::cout, std::cerr);
  if (*sens) return cmd_sensitivity(opts, std::cout, std::cerr);
  if (*verify) return cmd_verify(opts, std::cout, std::cerr);
  return cmd_chi_witness(opts, std::cout, std::cerr);
}
