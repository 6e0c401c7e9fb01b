#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "excode/packet.hpp"

using namespace excode;

namespace {

NativePacket native(FlowId flow, std::uint32_t seq, NodeId src, NodeId dst, Route route, std::size_t size = 64,
                    std::uint64_t seed = 1) {
  NativePacket p;
  p.uid = {flow, seq};
  p.src = src;
  p.dst = dst;
  p.route = std::move(route);
  p.payload = make_payload(seed, p.uid, size);
  return p;
}

std::vector<NodeId> ids(const HolderSet& h) { return {h.ids().begin(), h.ids().end()}; }

}  // namespace

TEST_CASE("holder annotation at the source") {
  // A=0 with neighbours B=1, C=2.
  auto p = native(1, 0, 0, 6, {0, 2, 4, 6});
  const std::vector<NodeId> nbrs{1, 2};
  auto annotated = annotate_holders(p, 0, nbrs);
  CHECK(ids(annotated.holders) == std::vector<NodeId>{0, 1, 2});
  CHECK(annotated.payload == p.payload);
}

TEST_CASE("holder annotation is set union") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<NodeId> pick(0, 20);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = native(1, trial, 0, 1, {0, 1});
    std::set<NodeId> oracle;
    for (int k = 0; k < 4; ++k) {
      NodeId cur = pick(rng);
      std::vector<NodeId> nbrs;
      for (int j = 0; j < 5; ++j) nbrs.push_back(pick(rng));
      std::sort(nbrs.begin(), nbrs.end());
      p = annotate_holders(p, cur, nbrs);
      oracle.insert(cur);
      oracle.insert(nbrs.begin(), nbrs.end());
      CHECK(ids(p.holders) == std::vector<NodeId>(oracle.begin(), oracle.end()));
    }
  }
}

TEST_CASE("xor of single bytes") {
  auto p = native(1, 0, 0, 1, {0, 1});
  auto q = native(2, 0, 1, 0, {1, 0});
  p.payload = Payload({0x0F});
  q.payload = Payload({0xF0});
  const auto e = xor_encode(p, q);
  REQUIRE(e.payload.size() == 1);
  CHECK(e.payload.bytes()[0] == 0xFF);
}

TEST_CASE("xor codec roundtrip, commutativity and involution") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(1, 1500);
  for (std::uint32_t i = 0; i < 1000; ++i) {
    const auto n = size(rng);
    auto p = native(1, i, 0, 3, {0, 1, 2, 3}, n, rng());
    auto q = native(2, i, 3, 0, {3, 2, 1, 0}, n, rng());
    const auto e = xor_encode(p, q);
    CHECK(xor_decode(e, p) == q);
    CHECK(xor_decode(e, q) == p);
    CHECK(xor_encode(q, p).payload == e.payload);

    // Bytewise oracle.
    const auto a = p.payload.bytes(), b = q.payload.bytes(), c = e.payload.bytes();
    bool bytewise = c.size() == n;
    for (std::size_t k = 0; bytewise && k < n; ++k) bytewise = c[k] == (a[k] ^ b[k]);
    CHECK(bytewise);
  }
}

TEST_CASE("codec rejects invalid pairs") {
  auto p = native(1, 0, 0, 1, {0, 1}, 64);
  auto p2 = native(1, 1, 0, 1, {0, 1}, 64);
  auto q = native(2, 0, 1, 0, {1, 0}, 64);
  auto shorter = native(3, 0, 1, 0, {1, 0}, 32);
  auto r = native(4, 0, 1, 0, {1, 0}, 64);
  CHECK_THROWS_AS(xor_encode(p, p2), SameFlow);
  CHECK_THROWS_AS(xor_encode(p, shorter), LengthMismatch);
  const auto e = xor_encode(p, q);
  CHECK_THROWS_AS(xor_decode(e, r), NotConstituent);
}

TEST_CASE("encoded header freezes constituent holders and routes") {
  auto p = native(1, 0, 0, 6, {0, 2, 4, 6});
  auto q = native(2, 0, 5, 1, {5, 3, 2, 1});
  p.holders = {0, 1, 2};
  p.hop_index = 1;
  q.holders = {5, 3, 6};
  q.hop_index = 2;
  const auto e = xor_encode(p, q);
  CHECK(e.constituents[0].uid == p.uid);
  CHECK(e.constituents[1].uid == q.uid);
  CHECK(e.constituents[0].holders == p.holders);
  CHECK(e.constituents[1].holders == q.holders);
  CHECK(e.constituents[0].route == p.route);
  CHECK(e.constituents[0].hop_index == 1);
  CHECK(e.constituents[1].hop_index == 2);
  const auto back = xor_decode(e, q);
  CHECK(back.holders == p.holders);
  CHECK(back.hop_index == 1);
}

TEST_CASE("payload generation is deterministic per seed and uid") {
  CHECK(make_payload(1, {1, 2}, 512) == make_payload(1, {1, 2}, 512));
  CHECK_FALSE(make_payload(1, {1, 2}, 512) == make_payload(1, {1, 3}, 512));
  CHECK_FALSE(make_payload(1, {1, 2}, 512) == make_payload(2, {1, 2}, 512));
  CHECK(make_payload(7, {0, 0}, 13).size() == 13);
}

TEST_CASE("labels") {
  auto p = native(3, 7, 0, 1, {0, 1});
  auto q = native(4, 2, 1, 0, {1, 0});
  CHECK(to_string(p.uid) == "3:7");
  CHECK(packet_label(Packet{p}) == "3:7");
  CHECK(packet_label(Packet{xor_encode(p, q)}) == "3:7^4:2");
}
