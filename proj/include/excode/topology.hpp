#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "excode/types.hpp"

namespace excode {

struct Position {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Position&, const Position&) = default;
};

/// Source-to-destination node list, both ends inclusive.
using Route = std::vector<NodeId>;

class NoRoute : public std::runtime_error {
 public:
  NoRoute(NodeId src, NodeId dst);
  NodeId src;
  NodeId dst;
};

/// Static unit-disk graph. Two nodes are linked iff their distance is at most
/// the radio range (closed disk). Immutable after construction.
class Topology {
 public:
  Topology(std::vector<Position> positions, double radio_range);

  std::size_t size() const { return positions_.size(); }
  double radio_range() const { return range_; }
  const std::vector<Position>& positions() const { return positions_; }

  /// Sorted ascending.
  std::span<const NodeId> neighbors(NodeId node) const { return adjacency_.at(node); }
  bool adjacent(NodeId a, NodeId b) const;
  bool contains(NodeId node) const { return node < positions_.size(); }

 private:
  std::vector<Position> positions_;
  double range_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::uint8_t> matrix_;
};

Topology build_topology(std::vector<Position> positions, double radio_range);

/// Uniform placement in [0, side]^2, reproducible for a given seed.
std::vector<Position> random_layout(std::size_t n, double side, std::uint64_t seed);

/// Evenly spaced rows x cols grid filling [0, side]^2.
std::vector<Position> grid_layout(std::size_t rows, std::size_t cols, double side);

/// Minimum-hop route. Among equal-length routes the lexicographically smallest
/// node sequence wins, so the result is a pure function of the adjacency.
Route shortest_path(const Topology& topology, NodeId src, NodeId dst);

/// Breadth-first hop distances from `from`; unreachable nodes get -1.
std::vector<int> hop_distances(const Topology& topology, NodeId from);

}  // namespace excode
