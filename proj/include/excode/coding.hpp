#pragma once

#include <deque>
#include <limits>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "excode/packet.hpp"
#include "excode/topology.hpp"

namespace excode {

enum class Scheme { NonCoding, Cope, Excode };

/// "none", "cope", "excode".
std::string_view to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);
inline constexpr std::string_view kSchemeNames = "none, cope, excode";

/// Advertisement of the native packets one node stores.
struct ReceptionReport {
  NodeId origin = 0;
  std::vector<PacketUid> uids;
};

/// What each 1-hop neighbour has advertised. Only neighbours given at
/// construction may have entries.
class ReceptionReportTable {
 public:
  ReceptionReportTable() = default;
  explicit ReceptionReportTable(std::span<const NodeId> neighbors);

  void record(NodeId neighbor, const PacketUid& uid);
  void apply(const ReceptionReport& report);
  bool holds(NodeId neighbor, const PacketUid& uid) const;
  bool knows(NodeId neighbor) const { return table_.contains(neighbor); }
  std::size_t size(NodeId neighbor) const;

 private:
  std::unordered_map<NodeId, std::unordered_set<std::uint64_t>> table_;
};

/// Holder-set test: p.dst in q.holders and q.dst in p.holders, distinct flows.
bool excode_can_code(const NativePacket& p, const NativePacket& q);

/// Two-hop test. Each packet's next hop from `self` must be its final
/// destination and that neighbour must have reported holding the other packet.
bool cope_can_code(const NativePacket& p, const NativePacket& q, const ReceptionReportTable& reports,
                   const Topology& topology, NodeId self);

struct CodingContext {
  Scheme scheme = Scheme::NonCoding;
  const ReceptionReportTable* reports = nullptr;
  const Topology* topology = nullptr;
  NodeId self = 0;
};

bool can_code(const NativePacket& p, const NativePacket& q, const CodingContext& ctx);

/// Front-to-back scan for the first native in `queue` that codes with `p`
/// and is the oldest queued packet of its flow. `queued_flows`, when known,
/// is the number of distinct flows in `queue`; the scan stops once all of
/// them have been passed.
std::optional<std::size_t> find_partner(const NativePacket& p, const std::deque<PacketPtr>& queue,
                                        const CodingContext& ctx,
                                        std::size_t queued_flows = std::numeric_limits<std::size_t>::max());

}  // namespace excode
