#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "excode/coding.hpp"
#include "excode/fixtures.hpp"

using namespace excode;

namespace {

NativePacket at(FlowId flow, Route route, std::size_t hop, HolderSet holders) {
  NativePacket p;
  p.uid = {flow, 0};
  p.src = route.front();
  p.dst = route.back();
  p.route = std::move(route);
  p.hop_index = hop;
  p.holders = std::move(holders);
  p.payload = make_payload(1, p.uid, 16);
  return p;
}

PacketPtr ptr(NativePacket p) { return std::make_shared<const Packet>(std::move(p)); }

}  // namespace

TEST_CASE("scheme names") {
  CHECK(to_string(Scheme::Excode) == "excode");
  CHECK(to_string(Scheme::Cope) == "cope");
  CHECK(to_string(Scheme::NonCoding) == "none");
  CHECK(parse_scheme("excode") == Scheme::Excode);
  CHECK(parse_scheme("cope") == Scheme::Cope);
  CHECK(parse_scheme("none") == Scheme::NonCoding);
  CHECK_FALSE(parse_scheme("xor").has_value());
}

TEST_CASE("holders fixture: pair at relay C") {
  const auto fx = holders_fixture();
  const auto topo = fx.scenario.topology.build();
  const NodeId A = fx.node("A"), B = fx.node("B"), C = fx.node("C"), D = fx.node("D"), E = fx.node("E"),
               F = fx.node("F"), G = fx.node("G");
  const auto p = at(1, {A, C, E, G}, 1, {A, B, C});
  const auto q = at(2, {F, D, C, B}, 2, {F, D, G, C});

  CHECK(excode_can_code(p, q));
  CHECK(excode_can_code(q, p));

  SUBCASE("COPE sees no two-hop structure") {
    ReceptionReportTable reports(topo.neighbors(C));
    for (NodeId n : topo.neighbors(C)) {
      reports.record(n, p.uid);
      reports.record(n, q.uid);
    }
    CHECK_FALSE(cope_can_code(p, q, reports, topo, C));
  }
  SUBCASE("same flow never codes") {
    auto q_same = q;
    q_same.uid.flow = p.uid.flow;
    q_same.uid.seq = 1;
    CHECK_FALSE(excode_can_code(p, q_same));
  }
  SUBCASE("empty holders never code") {
    CHECK_FALSE(excode_can_code(at(1, {A, C, E, G}, 1, {}), at(2, {F, D, C, B}, 2, {})));
  }
}

TEST_CASE("X topology codes under both schemes") {
  const auto fx = x_fixture();
  const auto topo = fx.scenario.topology.build();
  const NodeId S1 = fx.node("S1"), S2 = fx.node("S2"), C = fx.node("C"), D1 = fx.node("D1"), D2 = fx.node("D2");
  REQUIRE(topo.adjacent(S1, D2));
  REQUIRE(topo.adjacent(S2, D1));
  REQUIRE_FALSE(topo.adjacent(S1, D1));

  const auto p = at(1, {S1, C, D1}, 1, {S1, C, D2});
  const auto q = at(2, {S2, C, D2}, 1, {S2, C, D1});
  CHECK(excode_can_code(p, q));

  ReceptionReportTable reports(topo.neighbors(C));
  CHECK_FALSE(cope_can_code(p, q, reports, topo, C));
  reports.record(D1, q.uid);
  CHECK_FALSE(cope_can_code(p, q, reports, topo, C));
  reports.record(D2, p.uid);
  CHECK(cope_can_code(p, q, reports, topo, C));
  CHECK(cope_can_code(q, p, reports, topo, C));
}

TEST_CASE("reception reports") {
  const std::vector<NodeId> nbrs{1, 4};
  ReceptionReportTable t(nbrs);
  CHECK(t.knows(1));
  CHECK_FALSE(t.knows(2));
  CHECK_THROWS(t.record(2, {1, 0}));
  t.apply({4, {{1, 0}, {2, 5}}});
  CHECK(t.holds(4, {2, 5}));
  CHECK_FALSE(t.holds(1, {2, 5}));
  CHECK(t.size(4) == 2);
}

TEST_CASE("find_partner returns the first eligible entry") {
  CodingContext ctx{Scheme::Excode, nullptr, nullptr, 9};
  const auto p = at(1, {0, 9, 5}, 1, {0, 9, 3, 7});
  std::deque<PacketPtr> empty;
  CHECK_FALSE(find_partner(p, empty, ctx).has_value());

  // Every eligibility pattern over three queued candidates.
  for (int mask = 0; mask < 8; ++mask) {
    std::deque<PacketPtr> queue;
    std::vector<bool> eligible;
    for (int i = 0; i < 3; ++i) {
      const bool ok = mask & (1 << i);
      // Destination 3 is in p's holders; destination 8 is not.
      const NodeId dst = ok ? 3 : 8;
      queue.push_back(ptr(at(2 + i, {dst == 3 ? 6u : 4u, 9, dst}, 1, {5, 9})));
      eligible.push_back(ok);
    }
    const auto oracle_it = std::find(eligible.begin(), eligible.end(), true);
    const auto got = find_partner(p, queue, ctx);
    if (oracle_it == eligible.end()) {
      CHECK_FALSE(got.has_value());
    } else {
      REQUIRE(got.has_value());
      CHECK(*got == static_cast<std::size_t>(oracle_it - eligible.begin()));
    }
    CHECK_FALSE(find_partner(p, queue, CodingContext{Scheme::NonCoding, nullptr, nullptr, 9}).has_value());
  }
}

TEST_CASE("find_partner never lets a packet overtake its own flow") {
  CodingContext ctx{Scheme::Excode, nullptr, nullptr, 9};
  const auto p = at(1, {0, 9, 5}, 1, {0, 9, 3});
  std::deque<PacketPtr> queue;
  auto blocked = at(2, {6, 9, 8}, 1, {5, 9});  // ineligible: 8 not in p's holders
  auto eligible_same_flow = at(2, {6, 9, 3}, 1, {5, 9});
  eligible_same_flow.uid.seq = 1;
  auto other = at(3, {4, 9, 3}, 1, {5, 9});
  queue.push_back(ptr(blocked));
  queue.push_back(ptr(eligible_same_flow));
  CHECK_FALSE(find_partner(p, queue, ctx).has_value());
  queue.push_back(ptr(other));
  CHECK(find_partner(p, queue, ctx) == std::optional<std::size_t>{2});
}

TEST_CASE("bounded partner scan agrees with the full scan") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<FlowId> flow(2, 6);
  std::uniform_int_distribution<NodeId> dst(20, 25);
  std::uniform_int_distribution<int> coin(0, 3);
  CodingContext ctx{Scheme::Excode, nullptr, nullptr, 9};
  const auto p = at(1, {0, 9, 5}, 1, {0, 9, 21, 23});
  for (int trial = 0; trial < 500; ++trial) {
    std::deque<PacketPtr> queue;
    std::set<FlowId> flows;
    const int len = 1 + coin(rng) * 5;
    for (int i = 0; i < len; ++i) {
      const FlowId f = flow(rng);
      flows.insert(f);
      auto q = at(f, {4, 9, dst(rng)}, 1, coin(rng) ? HolderSet{5, 9} : HolderSet{9});
      q.uid.seq = static_cast<std::uint32_t>(i);
      queue.push_back(ptr(q));
    }
    CHECK(find_partner(p, queue, ctx, flows.size()) == find_partner(p, queue, ctx));
  }
}
