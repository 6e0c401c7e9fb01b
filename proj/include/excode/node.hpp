#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "excode/coding.hpp"
#include "excode/packet.hpp"
#include "excode/transmission.hpp"

namespace excode {

enum class Role { Addressed, Overheard };

enum class TransitionKind {
  Discarded,         ///< duplicate uid in the same role class
  Buffered,          ///< a native entered the buffer
  BufferedEncoded,
  EarlyDecoded,      ///< overheard encoded packet decoded into the buffer
  Delivered,
  DecodeFailed,
  QueuedInput,
  Encoded,
  ForwardedNative,   ///< moved from input to output queue
  ForwardedEncoded,
};

std::string_view to_string(TransitionKind kind);

struct Transition {
  TransitionKind kind;
  std::string label;
  /// The native concerned, for Buffered / EarlyDecoded / Delivered.
  std::shared_ptr<const NativePacket> native;
};

struct NodeStats {
  std::uint64_t transmissions = 0;
  std::uint64_t encoded_transmissions = 0;
  std::uint64_t encodes = 0;
  std::uint64_t decodes = 0;
  std::uint64_t early_decodes = 0;
  std::uint64_t overhears = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t deliveries = 0;
  std::uint64_t decode_failures = 0;
};

struct SendParams {
  double channel_rate_bps = 2e6;
  /// Holder sets are carried (ExCODE); otherwise header_bytes is zero.
  bool holders_on_wire = true;
  /// Include carried header bytes in airtime.
  bool count_header_overhead = false;
};

/// Called for every (head, candidate) pair examined by the partner search.
using PairAudit = std::function<void(const NativePacket& head, const NativePacket& candidate)>;

/// Keeps only the branches for which `self` is the next hop. Branches that
/// end here are handled by the receiver as deliveries, not forwarded.
EncodedPacket forward_encoded(const EncodedPacket& e, NodeId self);

/// Per-node protocol state: input/output FIFOs, the buffer of stored packets,
/// the duplicate filter and the neighbour reception-report table.
///
/// Receiving classifies an arrival immediately (duplicate, overheard,
/// destination, relay). Relay arrivals wait in the input queue; the coding
/// decision runs when the node is ready to send (`process_input`), so
/// packets that arrived while the radio was busy can pair up.
class Node {
 public:
  Node(NodeId id, std::vector<NodeId> neighbors);

  NodeId id() const { return id_; }
  std::span<const NodeId> neighbors() const { return neighbors_; }

  /// A freshly generated native at its source.
  std::vector<Transition> on_generate(NativePacket packet);

  std::vector<Transition> on_receive(const PacketPtr& packet, Role role, SimTime now);

  /// Takes the input-queue head: encodes it with the first eligible partner
  /// or moves it to the output queue unchanged.
  std::vector<Transition> process_input(const CodingContext& ctx, const PairAudit* audit = nullptr);

  /// Pops the output-queue head, annotates natives with this node and its
  /// neighbours and advances every active branch by one hop.
  std::optional<Transmission> on_send(const SendParams& params);

  ReceptionReport publish_reception_report() const;

  ReceptionReportTable& reports() { return reports_; }
  const ReceptionReportTable& reports() const { return reports_; }

  const std::deque<PacketPtr>& input_queue() const { return input_; }
  const std::deque<PacketPtr>& output_queue() const { return output_; }
  bool holds(const PacketUid& uid) const { return natives_.contains(uid); }
  std::shared_ptr<const NativePacket> buffered(const PacketUid& uid) const;
  std::size_t buffered_natives() const { return natives_.size(); }
  std::size_t buffered_encoded() const { return encoded_.size(); }
  const NodeStats& stats() const { return stats_; }

 private:
  struct SeenKey {
    std::uint64_t a;
    std::uint64_t b;
    Role role;
    friend bool operator==(const SeenKey&, const SeenKey&) = default;
  };
  struct SeenHash {
    std::size_t operator()(const SeenKey& k) const noexcept;
  };

  static SeenKey seen_key(const Packet& packet, Role role);
  bool store(const std::shared_ptr<const NativePacket>& native, std::vector<Transition>& out);
  void receive_encoded(const PacketPtr& packet, Role role, std::vector<Transition>& out);
  void push_input(PacketPtr packet);
  void count_input(const Packet& packet, int delta);

  NodeId id_;
  std::vector<NodeId> neighbors_;
  std::deque<PacketPtr> input_;
  /// Packets per flow currently in `input_`; zero entries are erased.
  std::unordered_map<FlowId, std::uint32_t> input_flows_;
  std::deque<PacketPtr> output_;
  std::unordered_map<PacketUid, std::shared_ptr<const NativePacket>> natives_;
  std::unordered_map<SeenKey, PacketPtr, SeenHash> encoded_;
  std::unordered_set<SeenKey, SeenHash> seen_;
  ReceptionReportTable reports_;
  NodeStats stats_;
};

}  // namespace excode
