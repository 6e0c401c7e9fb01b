#include "excode/coding.hpp"

#include <algorithm>

#include <stdexcept>
#include <string>

namespace excode {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::NonCoding: return "none";
    case Scheme::Cope: return "cope";
    case Scheme::Excode: return "excode";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  if (name == "none" || name == "noncoding" || name == "non-coding") return Scheme::NonCoding;
  if (name == "cope") return Scheme::Cope;
  if (name == "excode") return Scheme::Excode;
  return std::nullopt;
}

ReceptionReportTable::ReceptionReportTable(std::span<const NodeId> neighbors) {
  for (NodeId n : neighbors) table_.try_emplace(n);
}

void ReceptionReportTable::record(NodeId neighbor, const PacketUid& uid) {
  auto it = table_.find(neighbor);
  if (it == table_.end())
    throw std::invalid_argument("reception report from non-neighbour " + std::to_string(neighbor));
  it->second.insert(uid.key());
}

void ReceptionReportTable::apply(const ReceptionReport& report) {
  for (const auto& uid : report.uids) record(report.origin, uid);
}

bool ReceptionReportTable::holds(NodeId neighbor, const PacketUid& uid) const {
  auto it = table_.find(neighbor);
  return it != table_.end() && it->second.contains(uid.key());
}

std::size_t ReceptionReportTable::size(NodeId neighbor) const {
  auto it = table_.find(neighbor);
  return it == table_.end() ? 0 : it->second.size();
}

bool excode_can_code(const NativePacket& p, const NativePacket& q) {
  return p.uid.flow != q.uid.flow && q.holders.contains(p.dst) && p.holders.contains(q.dst);
}

namespace {

// Next hop from `self`, but only when it is the final destination.
std::optional<NodeId> one_hop_destination(const NativePacket& p, const Topology& topology, NodeId self) {
  if (p.hop_index + 1 >= p.route.size() || p.route[p.hop_index] != self) return std::nullopt;
  const NodeId next = p.route[p.hop_index + 1];
  if (next != p.dst || !topology.adjacent(self, next)) return std::nullopt;
  return next;
}

}  // namespace

bool cope_can_code(const NativePacket& p, const NativePacket& q, const ReceptionReportTable& reports,
                   const Topology& topology, NodeId self) {
  if (p.uid.flow == q.uid.flow) return false;
  const auto p_consumer = one_hop_destination(p, topology, self);
  const auto q_consumer = one_hop_destination(q, topology, self);
  if (!p_consumer || !q_consumer) return false;
  return reports.holds(*p_consumer, q.uid) && reports.holds(*q_consumer, p.uid);
}

bool can_code(const NativePacket& p, const NativePacket& q, const CodingContext& ctx) {
  switch (ctx.scheme) {
    case Scheme::NonCoding: return false;
    case Scheme::Excode: return excode_can_code(p, q);
    case Scheme::Cope:
      return ctx.reports && ctx.topology && cope_can_code(p, q, *ctx.reports, *ctx.topology, ctx.self);
  }
  return false;
}

std::optional<std::size_t> find_partner(const NativePacket& p, const std::deque<PacketPtr>& queue,
                                        const CodingContext& ctx, std::size_t queued_flows) {
  if (ctx.scheme == Scheme::NonCoding) return std::nullopt;
  // Only the oldest queued packet of each flow may jump the queue; anything
  // later would overtake its own predecessor.
  std::vector<FlowId> passed;
  auto pass = [&](FlowId f) {
    if (std::find(passed.begin(), passed.end(), f) != passed.end()) return false;
    passed.push_back(f);
    return true;
  };
  for (std::size_t i = 0; i < queue.size() && passed.size() < queued_flows; ++i) {
    const Packet& entry = *queue[i];
    if (const auto* q = std::get_if<NativePacket>(&entry)) {
      if (pass(q->uid.flow) && can_code(p, *q, ctx)) return i;
    } else {
      for (const auto& c : std::get<EncodedPacket>(entry).constituents)
        if (c.active) pass(c.uid.flow);
    }
  }
  return std::nullopt;
}

}  // namespace excode
