#include "doctest.h"

#include "excode/fixtures.hpp"
#include "excode/node.hpp"

using namespace excode;

namespace {

NativePacket make(FlowId flow, std::uint32_t seq, Route route, std::size_t hop, HolderSet holders = {}) {
  NativePacket p;
  p.uid = {flow, seq};
  p.src = route.front();
  p.dst = route.back();
  p.route = std::move(route);
  p.hop_index = hop;
  p.holders = std::move(holders);
  p.payload = make_payload(1, p.uid, 512);
  return p;
}

PacketPtr ptr(NativePacket p) { return std::make_shared<const Packet>(std::move(p)); }
PacketPtr ptr(EncodedPacket e) { return std::make_shared<const Packet>(std::move(e)); }

bool has(const std::vector<Transition>& ts, TransitionKind k) {
  for (const auto& t : ts)
    if (t.kind == k) return true;
  return false;
}

Node node_of(const Fixture& fx, const Topology& topo, std::string_view label) {
  const NodeId id = fx.node(label);
  auto n = topo.neighbors(id);
  return Node(id, {n.begin(), n.end()});
}

}  // namespace

TEST_CASE("duplicates are discarded without queue changes") {
  Node n(1, {0, 2});
  const auto p = ptr(make(1, 0, {0, 1, 2}, 1));
  auto first = n.on_receive(p, Role::Addressed, SimTime{0});
  CHECK(has(first, TransitionKind::QueuedInput));
  CHECK(n.input_queue().size() == 1);
  auto second = n.on_receive(p, Role::Addressed, SimTime{0});
  REQUIRE(second.size() == 1);
  CHECK(second[0].kind == TransitionKind::Discarded);
  CHECK(n.input_queue().size() == 1);
  CHECK(n.stats().duplicates == 1);
}

TEST_CASE("overheard natives are buffered, never queued") {
  Node n(5, {0, 1});
  const auto p = ptr(make(1, 0, {0, 1, 2}, 1));
  auto ts = n.on_receive(p, Role::Overheard, SimTime{0});
  CHECK(has(ts, TransitionKind::Buffered));
  CHECK(n.holds({1, 0}));
  CHECK(n.input_queue().empty());
  CHECK(n.output_queue().empty());
  // Overhearing again is a duplicate; being addressed later is not.
  CHECK(has(n.on_receive(p, Role::Overheard, SimTime{0}), TransitionKind::Discarded));
}

TEST_CASE("addressed native at its destination is delivered") {
  Node n(2, {1});
  auto ts = n.on_receive(ptr(make(1, 0, {0, 1, 2}, 2)), Role::Addressed, SimTime{0});
  CHECK(has(ts, TransitionKind::Delivered));
  CHECK(n.input_queue().empty());
  CHECK(n.stats().deliveries == 1);
}

TEST_CASE("addressed native off its route is a logic error") {
  Node n(7, {1});
  CHECK_THROWS_AS(n.on_receive(ptr(make(1, 0, {0, 1, 2}, 1)), Role::Addressed, SimTime{0}), std::logic_error);
}

TEST_CASE("holders fixture: relay C encodes p with q") {
  const auto fx = holders_fixture();
  const auto topo = fx.scenario.topology.build();
  const NodeId A = fx.node("A"), B = fx.node("B"), C = fx.node("C"), D = fx.node("D"), E = fx.node("E"),
               F = fx.node("F"), G = fx.node("G");
  Node c = node_of(fx, topo, "C");
  const auto q = make(2, 0, {F, D, C, B}, 2, {F, D, G, C});
  const auto p = make(1, 0, {A, C, E, G}, 1, {A, B, C});
  c.on_receive(ptr(q), Role::Addressed, SimTime{0});
  c.on_receive(ptr(p), Role::Addressed, SimTime{1});
  REQUIRE(c.input_queue().size() == 2);

  CodingContext ctx{Scheme::Excode, &c.reports(), &topo, C};
  auto ts = c.process_input(ctx);
  CHECK(has(ts, TransitionKind::Encoded));
  CHECK(c.input_queue().empty());
  REQUIRE(c.output_queue().size() == 1);
  CHECK(c.stats().encodes == 1);
  CHECK(c.buffered_encoded() == 1);
  CHECK(c.holds(p.uid));
  CHECK(c.holds(q.uid));

  const auto tx = c.on_send(SendParams{});
  REQUIRE(tx.has_value());
  CHECK(tx->encoded);
  CHECK(tx->addressed_receivers == std::vector<NodeId>{B, E});
  const auto& e = std::get<EncodedPacket>(*tx->packet);
  // The input-queue head (q) comes first.
  const auto& cq = e.constituents[0];
  const auto& cp = e.constituents[1];
  REQUIRE(cq.uid == q.uid);
  REQUIRE(cp.uid == p.uid);
  CHECK(cp.route[cp.hop_index] == E);
  CHECK(cq.route[cq.hop_index] == B);
  // Constituent holder sets travel unchanged.
  CHECK(cp.holders == p.holders);
  CHECK(cq.holders == q.holders);
  CHECK(tx->header_bytes == (p.holders.size() + q.holders.size()) * 4);

  SUBCASE("B decodes q with the p it overheard from A") {
    Node b = node_of(fx, topo, "B");
    b.on_receive(ptr(make(1, 0, {A, C, E, G}, 1, {A, B, C})), Role::Overheard, SimTime{0});
    auto rs = b.on_receive(tx->packet, Role::Addressed, SimTime{2});
    CHECK(has(rs, TransitionKind::Delivered));
    REQUIRE(b.buffered(q.uid));
    CHECK(b.buffered(q.uid)->payload == q.payload);
  }
  SUBCASE("E relays the encoded packet without re-encoding") {
    Node en = node_of(fx, topo, "E");
    auto rs = en.on_receive(tx->packet, Role::Addressed, SimTime{2});
    CHECK(has(rs, TransitionKind::QueuedInput));
    en.on_receive(ptr(make(3, 0, {E, G}, 0)), Role::Addressed, SimTime{3});
    auto ps = en.process_input(CodingContext{Scheme::Excode, &en.reports(), &topo, E});
    CHECK(has(ps, TransitionKind::ForwardedEncoded));
    CHECK_FALSE(has(ps, TransitionKind::Encoded));
    const auto fwd = en.on_send(SendParams{});
    REQUIRE(fwd.has_value());
    CHECK(fwd->addressed_receivers == std::vector<NodeId>{G});
  }
  SUBCASE("COPE leaves the pair alone") {
    Node c2 = node_of(fx, topo, "C");
    c2.on_receive(ptr(q), Role::Addressed, SimTime{0});
    c2.on_receive(ptr(p), Role::Addressed, SimTime{1});
    auto ps = c2.process_input(CodingContext{Scheme::Cope, &c2.reports(), &topo, C});
    CHECK_FALSE(has(ps, TransitionKind::Encoded));
    CHECK(c2.output_queue().size() == 1);
    CHECK(c2.input_queue().size() == 1);
  }
}

TEST_CASE("destination without the counterpart reports a decode failure") {
  Node b(1, {2});
  auto p = make(1, 0, {0, 2, 4}, 1, {0, 1, 2});
  auto q = make(2, 0, {3, 2, 1}, 1, {3, 2});
  auto e = xor_encode(p, q);
  ++e.constituents[0].hop_index;
  ++e.constituents[1].hop_index;
  e.constituents[0].active = false;
  auto ts = b.on_receive(ptr(e), Role::Addressed, SimTime{0});
  CHECK(has(ts, TransitionKind::DecodeFailed));
  CHECK(b.stats().decode_failures == 1);
}

TEST_CASE("overhearing an encoded packet decodes early when one constituent is known") {
  Node n(9, {2});
  auto p = make(1, 0, {0, 2, 4}, 1, {0, 2});
  auto q = make(2, 0, {4, 2, 0}, 1, {4, 2});
  n.on_receive(ptr(p), Role::Overheard, SimTime{0});
  auto ts = n.on_receive(ptr(xor_encode(p, q)), Role::Overheard, SimTime{1});
  CHECK(has(ts, TransitionKind::EarlyDecoded));
  REQUIRE(n.buffered(q.uid));
  CHECK(n.buffered(q.uid)->payload == q.payload);
  CHECK(n.input_queue().empty());
}

TEST_CASE("on_send") {
  SUBCASE("empty output queue sends nothing") {
    Node n(0, {1});
    CHECK_FALSE(n.on_send(SendParams{}).has_value());
  }
  SUBCASE("native is annotated and advanced") {
    Node n(0, {1, 3});
    n.on_generate(make(1, 0, {0, 1, 2}, 0));
    n.process_input(CodingContext{Scheme::Excode, nullptr, nullptr, 0});
    SendParams sp;
    sp.count_header_overhead = true;
    const auto tx = n.on_send(sp);
    REQUIRE(tx.has_value());
    const auto& p = std::get<NativePacket>(*tx->packet);
    CHECK(p.hop_index == 1);
    CHECK(p.holders == HolderSet{0, 1, 3});
    CHECK(tx->addressed_receivers == std::vector<NodeId>{1});
    CHECK(tx->overhearers == std::vector<NodeId>{3});
    CHECK(tx->header_bytes == 12);
    CHECK(tx->duration == airtime(512 + 12, 2e6));
  }
  SUBCASE("headers are free unless counted") {
    Node n(0, {1});
    n.on_generate(make(1, 0, {0, 1}, 0));
    n.process_input(CodingContext{});
    const auto tx = n.on_send(SendParams{});
    REQUIRE(tx.has_value());
    CHECK(tx->duration == std::chrono::nanoseconds(2'048'000));
  }
}

TEST_CASE("forward_encoded keeps only branches relayed here") {
  auto p = make(1, 0, {0, 5, 6, 7}, 1);
  auto q = make(2, 0, {9, 5, 8}, 1);
  auto e = xor_encode(p, q);
  for (auto& c : e.constituents) ++c.hop_index;  // now at 6 and 8
  const auto at6 = forward_encoded(e, 6);
  CHECK(at6.constituents[0].active);
  CHECK_FALSE(at6.constituents[1].active);
  const auto at8 = forward_encoded(e, 8);  // q ends at 8
  CHECK_FALSE(at8.constituents[0].active);
  CHECK_FALSE(at8.constituents[1].active);
  CHECK(at6.payload == e.payload);
}

TEST_CASE("reception report lists every buffered native") {
  Node n(0, {1});
  n.on_receive(ptr(make(2, 1, {1, 0, 3}, 1)), Role::Overheard, SimTime{0});
  n.on_receive(ptr(make(1, 4, {1, 0, 3}, 1)), Role::Overheard, SimTime{0});
  const auto r = n.publish_reception_report();
  CHECK(r.origin == 0);
  CHECK(r.uids == std::vector<PacketUid>{{1, 4}, {2, 1}});
}
