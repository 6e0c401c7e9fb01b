#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "excode/config.hpp"
#include "excode/metrics.hpp"

namespace excode {

struct CellResult {
  double sweep_value = 0.0;
  Scheme scheme = Scheme::Excode;
  std::uint64_t seed = 0;
  std::size_t flows = 0;
  std::optional<MetricsReport> metrics;
  std::string error;  ///< set when the cell's scenario was invalid
};

struct PlanOutcome {
  std::vector<CellResult> cells;  ///< plan order: sweep value, scheme, seed
  std::string csv;
  std::vector<std::filesystem::path> files;
  std::vector<std::string> errors;
};

struct RunPlanOptions {
  bool write_files = true;
  unsigned threads = 0;  ///< 0 = hardware concurrency
  bool count_header_overhead = false;
};

/// Runs every cell of the plan. Invalid cells are recorded, not fatal.
/// Writes results.csv and one SVG chart per metric into the plan's output dir.
PlanOutcome run_plan(const ExperimentPlan& plan, const RunPlanOptions& options = {});

std::string cells_to_csv(const std::vector<CellResult>& cells);

}  // namespace excode
