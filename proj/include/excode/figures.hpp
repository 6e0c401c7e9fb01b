#pragma once

#include <string>
#include <vector>

#include "excode/config.hpp"
#include "excode/plan_runner.hpp"

namespace excode {

struct FigureCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the built-in fixtures under every scheme and checks transmission
/// counts, encode locations and bit-exact delivery.
std::vector<FigureCheck> run_fixture_checks();

/// 16-node random-field load sweep over all three schemes. `quick` shortens
/// the run for smoke testing.
ExperimentPlan figures_sweep_plan(bool quick);

/// Directional checks on a finished sweep: ExCODE never encodes less than
/// COPE in the same cell and no scheme ever fails to decode.
std::vector<FigureCheck> check_sweep(const PlanOutcome& outcome);

}  // namespace excode
