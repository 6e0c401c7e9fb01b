#include "excode/scenario.hpp"

#include <random>
#include <string>

namespace excode {

std::vector<Position> TopologySource::positions() const {
  if (const auto* explicit_positions = std::get_if<std::vector<Position>>(&layout)) return *explicit_positions;
  const auto& spec = std::get<RandomLayoutSpec>(layout);
  return random_layout(spec.nodes, spec.side, spec.seed);
}

std::vector<FlowSpec> random_flows(const Topology& topology, std::size_t count, double rate,
                                   std::size_t packet_size, std::uint64_t seed) {
  std::vector<std::vector<int>> dist(topology.size());
  for (NodeId n = 0; n < topology.size(); ++n) dist[n] = hop_distances(topology, n);

  std::mt19937_64 rng(seed ^ 0x5eedf10ull);
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(topology.size() - 1));
  std::uniform_real_distribution<double> phase(0.0, 1.0);
  std::vector<FlowSpec> flows;
  flows.reserve(count);
  constexpr int kMaxDraws = 100000;
  for (std::size_t i = 0; i < count; ++i) {
    int draws = 0;
    NodeId src = 0;
    NodeId dst = 0;
    do {
      if (++draws > kMaxDraws) throw ScenarioInvalid("topology has no routable node pair for random flows");
      src = pick(rng);
      dst = pick(rng);
    } while (src == dst || dist[src][dst] < 1);
    FlowSpec f;
    f.flow = static_cast<FlowId>(i);
    f.src = src;
    f.dst = dst;
    f.rate = rate;
    f.packet_size = packet_size;
    // Random phase within one inter-packet gap so sources are not lock-stepped.
    f.start = phase(rng) / rate;
    flows.push_back(f);
  }
  return flows;
}

}  // namespace excode
