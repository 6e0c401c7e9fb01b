// Command-line front end: run experiment plans and reproduce the figure
// scenarios.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "excode/config.hpp"
#include "excode/figures.hpp"
#include "excode/plan_runner.hpp"
#include "excode/simulator.hpp"

namespace {

using namespace excode;

int cmd_run(const std::string& config_path, const std::string& scheme, const std::optional<std::uint64_t>& seed,
            const std::string& out, bool header_overhead, bool trace) {
  ExperimentPlan plan;
  try {
    plan = load_config(config_path);
    if (!scheme.empty()) {
      auto s = parse_scheme(scheme);
      if (!s) throw ValidationError("--scheme", "unknown scheme '" + scheme + "'; valid names: " +
                                                    std::string(kSchemeNames));
      plan.schemes = {*s};
    }
    if (seed) plan.seeds = {*seed};
    if (!out.empty()) plan.output_dir = out;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  }

  RunPlanOptions opts;
  opts.count_header_overhead = header_overhead;
  const auto outcome = run_plan(plan, opts);
  std::cout << outcome.csv;
  for (const auto& e : outcome.errors) std::cerr << "cell error: " << e << '\n';

  if (trace) {
    const auto& cell = outcome.cells.front();
    Scenario sc = materialize(plan, cell.sweep_value, cell.scheme, cell.seed);
    sc.count_header_overhead = sc.count_header_overhead || header_overhead;
    try {
      RunOptions ro;
      ro.keep_trace = true;
      const auto result = run(sc, ro);
      std::ofstream os(plan.output_dir / "trace.csv");
      result.trace.write_csv(os);
      std::cerr << "trace: " << result.trace.size() << " records, hash " << std::hex << result.trace.hash()
                << std::dec << '\n';
    } catch (const std::exception& e) {
      std::cerr << "trace run failed: " << e.what() << '\n';
    }
  }
  std::cerr << "wrote " << outcome.files.size() << " files to " << plan.output_dir.string() << '\n';
  return 0;
}

int cmd_figures(const std::string& out, bool quick) {
  bool ok = true;
  auto report = [&](const FigureCheck& c) {
    std::printf("[%s] %s  (%s)\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    ok = ok && c.passed;
  };
  for (const auto& c : run_fixture_checks()) report(c);

  auto plan = figures_sweep_plan(quick);
  plan.output_dir = out;
  const auto outcome = run_plan(plan);
  for (const auto& c : check_sweep(outcome)) report(c);
  std::printf("sweep results written to %s\n", plan.output_dir.string().c_str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"XOR network coding simulator: ExCODE holder sets vs. COPE vs. plain forwarding"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run an experiment plan from a config file");
  std::string config_path, scheme, out;
  std::optional<std::uint64_t> seed;
  bool header_overhead = false, trace = false;
  run_cmd->add_option("--config", config_path, "Plan file (JSON)")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--scheme", scheme, "Run only this scheme: excode, cope or none");
  run_cmd->add_option("--seed", seed, "Run only this seed");
  run_cmd->add_option("--out", out, "Output directory (overrides the config)");
  run_cmd->add_flag("--count-header-overhead", header_overhead, "Charge holder-set bytes to airtime");
  run_cmd->add_flag("--trace", trace, "Also write trace.csv for the first cell");

  auto* fig_cmd = app.add_subcommand("figures", "Check the built-in scenarios and run the 16-node sweep");
  std::string fig_out = "figures";
  bool quick = false;
  fig_cmd->add_option("--out", fig_out, "Output directory");
  fig_cmd->add_flag("--quick", quick, "Short sweep for smoke tests");

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) return cmd_run(config_path, scheme, seed, out, header_overhead, trace);
  return cmd_figures(fig_out, quick);
}
