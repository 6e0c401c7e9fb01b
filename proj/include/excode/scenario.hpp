#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <variant>
#include <vector>

#include "excode/coding.hpp"
#include "excode/topology.hpp"

namespace excode {

/// Constant-bit-rate flow.
struct FlowSpec {
  FlowId flow = 0;
  NodeId src = 0;
  NodeId dst = 0;
  double rate = 10.0;            ///< packets per second
  std::size_t packet_size = 512; ///< bytes
  double start = 0.0;            ///< seconds
  double stop = std::numeric_limits<double>::infinity();
};

struct RandomLayoutSpec {
  std::size_t nodes = 16;
  double side = 800.0;
  std::uint64_t seed = 1;
};

struct TopologySource {
  std::variant<std::vector<Position>, RandomLayoutSpec> layout = RandomLayoutSpec{};
  double radio_range = 200.0;

  std::vector<Position> positions() const;
  Topology build() const { return Topology(positions(), radio_range); }
};

struct Scenario {
  TopologySource topology;
  std::vector<FlowSpec> flows;
  Scheme scheme = Scheme::Excode;
  double channel_rate_bps = 2e6;
  double duration_s = 120.0;
  /// Extra time after traffic generation stops during which queues drain.
  double drain_s = 0.0;
  std::uint64_t seed = 1;
  bool count_header_overhead = false;
};

class ScenarioInvalid : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Picks `count` flows with uniformly random, mutually routable endpoints.
/// Flow i of a smaller count is always flow i of a larger one for the same
/// seed, so load sweeps nest.
std::vector<FlowSpec> random_flows(const Topology& topology, std::size_t count, double rate,
                                   std::size_t packet_size, std::uint64_t seed);

}  // namespace excode
