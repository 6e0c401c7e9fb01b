#include "excode/packet.hpp"

#include <algorithm>
#include <charconv>

namespace excode {

std::string to_string(const PacketUid& uid) {
  char buf[24];
  char* end = std::to_chars(buf, buf + sizeof buf, uid.flow).ptr;
  *end++ = ':';
  end = std::to_chars(end, buf + sizeof buf, uid.seq).ptr;
  return std::string(buf, end);
}

HolderSet::HolderSet(std::initializer_list<NodeId> ids) {
  for (NodeId id : ids) insert(id);
}

void HolderSet::insert(NodeId id) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) ids_.insert(it, id);
}

void HolderSet::merge(std::span<const NodeId> ids) {
  for (NodeId id : ids) insert(id);
}

bool HolderSet::contains(NodeId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

Payload::Payload(std::vector<std::uint8_t> bytes)
    : data_(std::make_shared<const std::vector<std::uint8_t>>(std::move(bytes))) {}

std::span<const std::uint8_t> Payload::bytes() const {
  if (!data_) return {};
  return {data_->data(), data_->size()};
}

bool operator==(const Payload& a, const Payload& b) {
  if (a.data_ == b.data_) return true;
  const auto x = a.bytes();
  const auto y = b.bytes();
  return std::equal(x.begin(), x.end(), y.begin(), y.end());
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Payload make_payload(std::uint64_t seed, const PacketUid& uid, std::size_t size) {
  std::uint64_t state = seed ^ (uid.key() * 0x2545f4914f6cdd1dULL);
  std::vector<std::uint8_t> bytes(size);
  for (std::size_t i = 0; i < size; i += 8) {
    std::uint64_t word = splitmix64(state);
    for (std::size_t k = 0; k < 8 && i + k < size; ++k) {
      bytes[i + k] = static_cast<std::uint8_t>(word & 0xff);
      word >>= 8;
    }
  }
  return Payload(std::move(bytes));
}

NativePacket annotate_holders(NativePacket packet, NodeId current, std::span<const NodeId> neighbors) {
  packet.holders.insert(current);
  packet.holders.merge(neighbors);
  return packet;
}

namespace {

ConstituentHeader header_of(const NativePacket& p) {
  return ConstituentHeader{p.uid, p.src, p.dst, p.route, p.hop_index, p.holders, p.created_at, true};
}

Payload xor_payloads(const Payload& a, const Payload& b) {
  if (a.size() != b.size()) throw LengthMismatch();
  const auto x = a.bytes();
  const auto y = b.bytes();
  std::vector<std::uint8_t> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] ^ y[i];
  return Payload(std::move(out));
}

}  // namespace

EncodedPacket xor_encode(const NativePacket& p, const NativePacket& q) {
  if (p.uid.flow == q.uid.flow) throw SameFlow();
  EncodedPacket e;
  e.payload = xor_payloads(p.payload, q.payload);
  e.constituents = {header_of(p), header_of(q)};
  e.created_at = std::min(p.created_at, q.created_at);
  return e;
}

NativePacket xor_decode(const EncodedPacket& e, const NativePacket& known) {
  const auto& [a, b] = e.constituents;
  const ConstituentHeader* other = nullptr;
  if (known.uid == a.uid) {
    other = &b;
  } else if (known.uid == b.uid) {
    other = &a;
  } else {
    throw NotConstituent();
  }
  NativePacket out;
  out.uid = other->uid;
  out.src = other->src;
  out.dst = other->dst;
  out.route = other->route;
  out.hop_index = other->hop_index;
  out.holders = other->holders;
  out.created_at = other->created_at;
  out.payload = xor_payloads(e.payload, known.payload);
  return out;
}

bool is_last_hop(const NativePacket& p) { return p.hop_index + 1 == p.route.size(); }
bool is_last_hop(const ConstituentHeader& c) { return c.hop_index + 1 == c.route.size(); }

std::string packet_label(const Packet& packet) {
  if (const auto* n = std::get_if<NativePacket>(&packet)) return to_string(n->uid);
  const auto& e = std::get<EncodedPacket>(packet);
  return to_string(e.constituents[0].uid) + "^" + to_string(e.constituents[1].uid);
}

}  // namespace excode
