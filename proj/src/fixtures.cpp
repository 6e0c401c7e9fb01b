#include "excode/fixtures.hpp"

#include <algorithm>
#include <stdexcept>

namespace excode {

NodeId Fixture::node(std::string_view label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw std::out_of_range("fixture " + name + " has no node " + std::string(label));
  return static_cast<NodeId>(it - labels.begin());
}

namespace {

struct NamedPoint {
  std::string label;
  Position pos;
};

Fixture make_fixture(std::string name, std::string description, const std::vector<NamedPoint>& points) {
  Fixture f;
  f.name = std::move(name);
  f.description = std::move(description);
  std::vector<Position> positions;
  for (const auto& p : points) {
    f.labels.push_back(p.label);
    positions.push_back(p.pos);
  }
  f.scenario.topology.layout = positions;
  f.scenario.topology.radio_range = 200.0;
  f.scenario.duration_s = 1.0;
  f.scenario.channel_rate_bps = 2e6;
  f.scenario.seed = 1;
  return f;
}

// One packet: a 1 pkt/s flow stopped after half a second.
void add_single_packet_flow(Fixture& f, std::string_view src, std::string_view dst, double start) {
  FlowSpec flow;
  flow.flow = static_cast<FlowId>(f.scenario.flows.size());
  flow.src = f.node(src);
  flow.dst = f.node(dst);
  flow.rate = 1.0;
  flow.packet_size = 512;
  flow.start = start;
  flow.stop = start + 0.5;
  f.scenario.flows.push_back(flow);
}

}  // namespace

Fixture chain_fixture() {
  auto f = make_fixture("chain", "A - C - E chain, A->E and E->A",
                        {{"A", {0, 0}}, {"C", {180, 0}}, {"E", {360, 0}}});
  add_single_packet_flow(f, "A", "E", 0.0);
  add_single_packet_flow(f, "E", "A", 0.0);
  return f;
}

Fixture x_fixture() {
  auto f = make_fixture("x", "X topology through relay C",
                        {{"S1", {-120, 80}},
                         {"S2", {120, -80}},
                         {"C", {0, 0}},
                         {"D1", {120, 80}},
                         {"D2", {-120, -80}}});
  add_single_packet_flow(f, "S1", "D1", 0.0);
  add_single_packet_flow(f, "S2", "D2", 0.0);
  return f;
}

Fixture holders_fixture() {
  auto f = make_fixture("holders", "p: A->C->E->G, q: F->D->C->B",
                        {{"A", {-180, 0}},
                         {"B", {-90, -150}},
                         {"C", {0, 0}},
                         {"D", {0, 180}},
                         {"E", {180, 0}},
                         {"F", {170, 260}},
                         {"G", {300, 130}}});
  // p needs one hop to reach C and q needs two; delaying p by one airtime
  // makes both arrive at C together.
  add_single_packet_flow(f, "A", "G", kFixtureHopSeconds);
  add_single_packet_flow(f, "F", "B", 0.0);
  return f;
}

Fixture multihop_fixture() {
  auto f = make_fixture("multihop", "p: S->O1->O2->O3->D->D1, q: D->O3->O2->O1->S->Sj",
                        {{"Sj", {-180, 0}},
                         {"S", {0, 0}},
                         {"S1", {0, 150}},
                         {"S2", {0, -150}},
                         {"O1", {180, 0}},
                         {"O1a", {180, 150}},
                         {"O2", {360, 0}},
                         {"O2a", {360, -150}},
                         {"O3", {540, 0}},
                         {"O3a", {540, 150}},
                         {"D", {720, 0}},
                         {"D1", {900, 0}},
                         {"D2", {720, 150}}});
  add_single_packet_flow(f, "S", "D1", 0.0);
  add_single_packet_flow(f, "D", "Sj", 0.0);
  return f;
}

std::vector<std::string> fixture_names() { return {"chain", "x", "holders", "multihop"}; }

std::optional<Fixture> find_fixture(std::string_view name) {
  if (name == "chain") return chain_fixture();
  if (name == "x") return x_fixture();
  if (name == "holders") return holders_fixture();
  if (name == "multihop") return multihop_fixture();
  return std::nullopt;
}

}  // namespace excode
