#include "excode/topology.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <string>

namespace excode {

NoRoute::NoRoute(NodeId s, NodeId d)
    : std::runtime_error("no route from node " + std::to_string(s) + " to node " + std::to_string(d)),
      src(s),
      dst(d) {}

Topology::Topology(std::vector<Position> positions, double radio_range)
    : positions_(std::move(positions)), range_(radio_range) {
  if (positions_.empty()) throw std::invalid_argument("topology needs at least one node");
  if (!(radio_range > 0.0)) throw std::invalid_argument("radio range must be positive");

  const std::size_t n = positions_.size();
  adjacency_.resize(n);
  matrix_.assign(n * n, 0);
  const double range_sq = range_ * range_;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = positions_[i].x - positions_[j].x;
      const double dy = positions_[i].y - positions_[j].y;
      if (dx * dx + dy * dy <= range_sq) {
        adjacency_[i].push_back(static_cast<NodeId>(j));
        adjacency_[j].push_back(static_cast<NodeId>(i));
        matrix_[i * n + j] = matrix_[j * n + i] = 1;
      }
    }
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool Topology::adjacent(NodeId a, NodeId b) const {
  if (!contains(a) || !contains(b)) return false;
  return matrix_[static_cast<std::size_t>(a) * positions_.size() + b] != 0;
}

Topology build_topology(std::vector<Position> positions, double radio_range) {
  return Topology(std::move(positions), radio_range);
}

std::vector<Position> random_layout(std::size_t n, double side, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random_layout needs n >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, side);
  std::vector<Position> out(n);
  for (auto& p : out) {
    p.x = coord(rng);
    p.y = coord(rng);
  }
  return out;
}

std::vector<Position> grid_layout(std::size_t rows, std::size_t cols, double side) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("grid_layout needs rows, cols >= 1");
  const double dx = cols > 1 ? side / static_cast<double>(cols - 1) : 0.0;
  const double dy = rows > 1 ? side / static_cast<double>(rows - 1) : 0.0;
  std::vector<Position> out;
  out.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      out.push_back({static_cast<double>(c) * dx, static_cast<double>(r) * dy});
  return out;
}

std::vector<int> hop_distances(const Topology& topology, NodeId from) {
  std::vector<int> dist(topology.size(), -1);
  std::deque<NodeId> frontier{from};
  dist.at(from) = 0;
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop_front();
    for (NodeId v : topology.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        frontier.push_back(v);
      }
    }
  }
  return dist;
}

Route shortest_path(const Topology& topology, NodeId src, NodeId dst) {
  if (!topology.contains(src) || !topology.contains(dst))
    throw std::out_of_range("shortest_path: node id out of range");
  // Distances are taken from the destination so the walk from src can pick
  // the smallest-id neighbour that is one hop closer at every step.
  const auto dist = hop_distances(topology, dst);
  if (dist[src] < 0) throw NoRoute(src, dst);

  Route route{src};
  NodeId at = src;
  while (at != dst) {
    for (NodeId v : topology.neighbors(at)) {
      if (dist[v] == dist[at] - 1) {
        at = v;
        break;
      }
    }
    route.push_back(at);
  }
  return route;
}

}  // namespace excode
