#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "excode/topology.hpp"
#include "excode/types.hpp"

namespace excode {

/// Identity of one native packet: (flow, sequence number).
struct PacketUid {
  FlowId flow = 0;
  std::uint32_t seq = 0;

  std::uint64_t key() const { return (std::uint64_t{flow} << 32) | seq; }
  friend auto operator<=>(const PacketUid&, const PacketUid&) = default;
};

std::string to_string(const PacketUid& uid);

/// Node ids known to hold a copy of a packet. Kept sorted; insertion is a
/// set union so the contents never shrink.
class HolderSet {
 public:
  HolderSet() = default;
  HolderSet(std::initializer_list<NodeId> ids);

  void insert(NodeId id);
  void merge(std::span<const NodeId> ids);
  bool contains(NodeId id) const;
  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }
  std::span<const NodeId> ids() const { return ids_; }

  /// Wire size with one 32-bit address per entry.
  std::size_t wire_bytes() const { return ids_.size() * 4; }

  friend bool operator==(const HolderSet&, const HolderSet&) = default;

 private:
  std::vector<NodeId> ids_;
};

/// Immutable byte string with cheap copies. Overheard copies of one
/// transmission share storage.
class Payload {
 public:
  Payload() = default;
  explicit Payload(std::vector<std::uint8_t> bytes);

  std::size_t size() const { return data_ ? data_->size() : 0; }
  std::span<const std::uint8_t> bytes() const;

  friend bool operator==(const Payload& a, const Payload& b);

 private:
  std::shared_ptr<const std::vector<std::uint8_t>> data_;
};

/// Deterministic payload content for a native packet.
Payload make_payload(std::uint64_t seed, const PacketUid& uid, std::size_t size);

struct NativePacket {
  PacketUid uid;
  NodeId src = 0;
  NodeId dst = 0;
  Route route;
  /// Index in `route` of the node that holds custody (or is about to, once
  /// the packet is on the air).
  std::size_t hop_index = 0;
  HolderSet holders;
  Payload payload;
  SimTime created_at{0};

  friend bool operator==(const NativePacket&, const NativePacket&) = default;
};

struct ConstituentHeader {
  PacketUid uid;
  NodeId src = 0;
  NodeId dst = 0;
  Route route;
  std::size_t hop_index = 0;
  /// Frozen at encode time; encoded transmissions never extend it.
  HolderSet holders;
  SimTime created_at{0};
  /// Whether this branch still needs forwarding.
  bool active = true;

  friend bool operator==(const ConstituentHeader&, const ConstituentHeader&) = default;
};

struct EncodedPacket {
  std::array<ConstituentHeader, 2> constituents;
  Payload payload;
  SimTime created_at{0};

  friend bool operator==(const EncodedPacket&, const EncodedPacket&) = default;
};

using Packet = std::variant<NativePacket, EncodedPacket>;
using PacketPtr = std::shared_ptr<const Packet>;

class SameFlow : public std::invalid_argument {
 public:
  SameFlow() : std::invalid_argument("cannot encode two packets of the same flow") {}
};

class LengthMismatch : public std::invalid_argument {
 public:
  LengthMismatch() : std::invalid_argument("payload lengths differ") {}
};

class NotConstituent : public std::invalid_argument {
 public:
  NotConstituent() : std::invalid_argument("known packet is not a constituent of the encoded packet") {}
};

/// holders' = holders + {current} + neighbors. Nothing else changes.
NativePacket annotate_holders(NativePacket packet, NodeId current, std::span<const NodeId> neighbors);

EncodedPacket xor_encode(const NativePacket& p, const NativePacket& q);

/// Recovers the constituent that is not `known`.
NativePacket xor_decode(const EncodedPacket& e, const NativePacket& known);

bool is_last_hop(const NativePacket& p);
bool is_last_hop(const ConstituentHeader& c);

/// Human-readable id: "f:s" for natives, "f:s^f:s" for encoded packets.
std::string packet_label(const Packet& packet);

}  // namespace excode

template <>
struct std::hash<excode::PacketUid> {
  std::size_t operator()(const excode::PacketUid& uid) const noexcept {
    return std::hash<std::uint64_t>{}(uid.key());
  }
};
