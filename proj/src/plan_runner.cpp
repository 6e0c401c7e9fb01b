#include "excode/plan_runner.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

#include "excode/chart.hpp"
#include "excode/simulator.hpp"

namespace excode {

std::string cells_to_csv(const std::vector<CellResult>& cells) {
  std::string out = csv_header() + "\n";
  for (const auto& c : cells) {
    if (!c.metrics) continue;
    out += csv_row(*c.metrics, c.scheme, c.seed, c.flows);
    out += '\n';
  }
  return out;
}

PlanOutcome run_plan(const ExperimentPlan& plan, const RunPlanOptions& options) {
  PlanOutcome outcome;
  for (double v : plan.sweep_values)
    for (Scheme s : plan.schemes)
      for (std::uint64_t seed : plan.seeds) outcome.cells.push_back({v, s, seed, 0, std::nullopt, {}});

  auto run_cell = [&](CellResult& cell) {
    try {
      Scenario sc = materialize(plan, cell.sweep_value, cell.scheme, cell.seed);
      sc.count_header_overhead = sc.count_header_overhead || options.count_header_overhead;
      cell.flows = sc.flows.size();
      cell.metrics = run(sc).metrics;
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(outcome.cells.size()));
  if (threads <= 1) {
    for (auto& c : outcome.cells) run_cell(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < outcome.cells.size(); i = next++) run_cell(outcome.cells[i]);
      });
  }

  for (const auto& c : outcome.cells) {
    if (!c.error.empty())
      outcome.errors.push_back("value=" + std::to_string(c.sweep_value) + " scheme=" +
                               std::string(to_string(c.scheme)) + " seed=" + std::to_string(c.seed) + ": " +
                               c.error);
  }
  outcome.csv = cells_to_csv(outcome.cells);

  if (options.write_files) {
    std::filesystem::create_directories(plan.output_dir);
    const auto csv_path = plan.output_dir / "results.csv";
    std::ofstream(csv_path) << outcome.csv;
    outcome.files.push_back(csv_path);
    if (!outcome.errors.empty()) {
      const auto err_path = plan.output_dir / "errors.txt";
      std::ofstream err(err_path);
      for (const auto& e : outcome.errors) err << e << '\n';
      outcome.files.push_back(err_path);
    }
    for (auto& p : write_charts_from_csv(csv_path, plan.output_dir)) outcome.files.push_back(std::move(p));
  }
  return outcome;
}

}  // namespace excode
