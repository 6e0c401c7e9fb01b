#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "excode/scenario.hpp"

namespace excode {

/// Small hand-built topologies with named nodes and single-packet flows.
struct Fixture {
  std::string name;
  std::string description;
  std::vector<std::string> labels;  ///< label of node i
  Scenario scenario;

  NodeId node(std::string_view label) const;
};

/// A - C - E, flows A->E and E->A crossing at C.
Fixture chain_fixture();
/// S1, S2 send through C to D1, D2; each destination overhears the other source.
Fixture x_fixture();
/// p: A->C->E->G, q: F->D->C->B. Destinations are out of C's one-hop reach
/// for p but hold the counterpart via overhearing at the sources.
Fixture holders_fixture();
/// Two 5-hop flows crossing along a relay chain O1..O3 with side neighbours.
Fixture multihop_fixture();

std::vector<std::string> fixture_names();
std::optional<Fixture> find_fixture(std::string_view name);

/// Airtime of one 512-byte packet at 2 Mb/s.
inline constexpr double kFixtureHopSeconds = 512 * 8 / 2e6;

}  // namespace excode
