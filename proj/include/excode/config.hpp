#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "excode/scenario.hpp"

namespace excode {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Carries the dotted path of the offending field, e.g. "flows[1].rate".
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message);
  std::string field;
};

enum class SweepVariable { None, Flows, Rate };

struct RandomFlowSpec {
  std::size_t count = 2;
  double rate = 0.0;
  std::size_t packet_size = 512;
};

/// Defaults used when a config leaves a field out.
struct PlanDefaults {
  static constexpr std::size_t kNodes = 16;
  static constexpr double kSide = 800.0;
  static constexpr double kRange = 200.0;
  static constexpr std::size_t kPacketSize = 512;
  static constexpr double kChannelRate = 2e6;
  static constexpr double kDuration = 120.0;
  /// Packets per second per flow.
  static constexpr double kFlowRate = 200.0;
};

struct ExperimentPlan {
  std::string name = "experiment";
  /// Topology, explicit flows, channel and timing shared by every cell.
  Scenario base;
  /// Set when flows are drawn at random per cell instead of listed.
  std::optional<RandomFlowSpec> random_flows;
  /// When false a random layout is re-drawn from each cell's seed.
  bool topology_seed_fixed = false;
  SweepVariable sweep = SweepVariable::None;
  std::vector<double> sweep_values{0.0};
  std::vector<Scheme> schemes{Scheme::NonCoding, Scheme::Cope, Scheme::Excode};
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path output_dir = "results";
};

ExperimentPlan parse_config(std::string_view json_text);
ExperimentPlan load_config(const std::filesystem::path& path);

/// The concrete scenario for one (sweep value, scheme, seed) cell.
Scenario materialize(const ExperimentPlan& plan, double sweep_value, Scheme scheme, std::uint64_t seed);

}  // namespace excode
