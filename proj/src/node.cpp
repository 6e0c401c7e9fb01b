#include "excode/node.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace excode {

SimTime airtime(std::size_t bytes, double rate_bps) {
  return SimTime{static_cast<std::int64_t>(std::llround(static_cast<double>(bytes) * 8.0 * 1e9 / rate_bps))};
}

std::string_view to_string(TransitionKind kind) {
  switch (kind) {
    case TransitionKind::Discarded: return "discard_dup";
    case TransitionKind::Buffered: return "buffer";
    case TransitionKind::BufferedEncoded: return "buffer_encoded";
    case TransitionKind::EarlyDecoded: return "early_decode";
    case TransitionKind::Delivered: return "deliver";
    case TransitionKind::DecodeFailed: return "decode_fail";
    case TransitionKind::QueuedInput: return "queue_in";
    case TransitionKind::Encoded: return "encode";
    case TransitionKind::ForwardedNative: return "queue_out";
    case TransitionKind::ForwardedEncoded: return "queue_out_encoded";
  }
  return "?";
}

EncodedPacket forward_encoded(const EncodedPacket& e, NodeId self) {
  EncodedPacket out = e;
  for (auto& c : out.constituents) {
    if (c.active && (c.route[c.hop_index] != self || is_last_hop(c))) c.active = false;
  }
  return out;
}

std::size_t Node::SeenHash::operator()(const SeenKey& k) const noexcept {
  std::uint64_t h = k.a * 0x9e3779b97f4a7c15ULL;
  h ^= k.b + 0x7f4a7c159e3779b9ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::uint64_t>(k.role) + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

Node::Node(NodeId id, std::vector<NodeId> neighbors)
    : id_(id), neighbors_(std::move(neighbors)), reports_(neighbors_) {
  std::sort(neighbors_.begin(), neighbors_.end());
}

Node::SeenKey Node::seen_key(const Packet& packet, Role role) {
  if (const auto* n = std::get_if<NativePacket>(&packet)) return {n->uid.key(), ~std::uint64_t{0}, role};
  const auto& e = std::get<EncodedPacket>(packet);
  auto a = e.constituents[0].uid.key();
  auto b = e.constituents[1].uid.key();
  if (a > b) std::swap(a, b);
  return {a, b, role};
}

std::shared_ptr<const NativePacket> Node::buffered(const PacketUid& uid) const {
  auto it = natives_.find(uid);
  return it == natives_.end() ? nullptr : it->second;
}

bool Node::store(const std::shared_ptr<const NativePacket>& native, std::vector<Transition>& out) {
  auto [it, inserted] = natives_.try_emplace(native->uid, native);
  if (!inserted) return false;
  seen_.insert(SeenKey{native->uid.key(), ~std::uint64_t{0}, Role::Overheard});
  out.push_back({TransitionKind::Buffered, to_string(native->uid), native});
  return true;
}

std::vector<Transition> Node::on_generate(NativePacket packet) {
  std::vector<Transition> out;
  auto ptr = std::make_shared<const Packet>(std::move(packet));
  const auto& native = std::get<NativePacket>(*ptr);
  seen_.insert(seen_key(*ptr, Role::Addressed));
  store(std::shared_ptr<const NativePacket>(ptr, &native), out);
  push_input(ptr);
  out.push_back({TransitionKind::QueuedInput, to_string(native.uid), nullptr});
  return out;
}

std::vector<Transition> Node::on_receive(const PacketPtr& packet, Role role, SimTime /*now*/) {
  std::vector<Transition> out;
  const auto key = seen_key(*packet, role);
  if (seen_.contains(key)) {
    ++stats_.duplicates;
    out.push_back({TransitionKind::Discarded, packet_label(*packet), nullptr});
    return out;
  }
  seen_.insert(key);

  if (std::holds_alternative<EncodedPacket>(*packet)) {
    receive_encoded(packet, role, out);
    return out;
  }

  const auto& p = std::get<NativePacket>(*packet);
  std::shared_ptr<const NativePacket> native(packet, &p);
  if (role == Role::Overheard) {
    ++stats_.overhears;
    store(native, out);
    return out;
  }
  if (p.route.at(p.hop_index) != id_)
    throw std::logic_error("addressed native delivered to a node that is not its next hop");
  store(native, out);
  if (is_last_hop(p)) {
    ++stats_.deliveries;
    out.push_back({TransitionKind::Delivered, to_string(p.uid), native});
  } else {
    push_input(packet);
    out.push_back({TransitionKind::QueuedInput, to_string(p.uid), nullptr});
  }
  return out;
}

void Node::receive_encoded(const PacketPtr& packet, Role role, std::vector<Transition>& out) {
  const auto& e = std::get<EncodedPacket>(*packet);
  const auto label = packet_label(*packet);
  encoded_.try_emplace(seen_key(*packet, Role::Addressed), packet);
  out.push_back({TransitionKind::BufferedEncoded, label, nullptr});

  if (role == Role::Overheard) {
    ++stats_.overhears;
    const bool has0 = holds(e.constituents[0].uid);
    const bool has1 = holds(e.constituents[1].uid);
    if (has0 != has1) {
      const auto& known = natives_.at(e.constituents[has0 ? 0 : 1].uid);
      auto decoded = std::make_shared<const NativePacket>(xor_decode(e, *known));
      ++stats_.early_decodes;
      out.push_back({TransitionKind::EarlyDecoded, to_string(decoded->uid), decoded});
      store(decoded, out);
    }
    return;
  }

  bool relay = false;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& c = e.constituents[i];
    if (!c.active || c.route.at(c.hop_index) != id_) continue;
    if (!is_last_hop(c)) {
      relay = true;
      continue;
    }
    const auto& other = e.constituents[1 - i];
    auto known = buffered(other.uid);
    if (!known) {
      ++stats_.decode_failures;
      out.push_back({TransitionKind::DecodeFailed, label, nullptr});
      continue;
    }
    auto decoded = std::make_shared<const NativePacket>(xor_decode(e, *known));
    ++stats_.decodes;
    ++stats_.deliveries;
    store(decoded, out);
    out.push_back({TransitionKind::Delivered, to_string(decoded->uid), decoded});
  }

  if (relay) {
    push_input(std::make_shared<const Packet>(forward_encoded(e, id_)));
    out.push_back({TransitionKind::QueuedInput, label, nullptr});
  }
}

void Node::push_input(PacketPtr packet) {
  count_input(*packet, +1);
  input_.push_back(std::move(packet));
}

void Node::count_input(const Packet& packet, int delta) {
  auto bump = [&](FlowId f) {
    auto& n = input_flows_[f];
    n = static_cast<std::uint32_t>(static_cast<int>(n) + delta);
    if (n == 0) input_flows_.erase(f);
  };
  if (const auto* n = std::get_if<NativePacket>(&packet)) {
    bump(n->uid.flow);
    return;
  }
  for (const auto& c : std::get<EncodedPacket>(packet).constituents)
    if (c.active) bump(c.uid.flow);
}

std::vector<Transition> Node::process_input(const CodingContext& ctx, const PairAudit* audit) {
  std::vector<Transition> out;
  if (input_.empty()) return out;
  PacketPtr head = std::move(input_.front());
  input_.pop_front();
  count_input(*head, -1);

  const auto* p = std::get_if<NativePacket>(head.get());
  if (!p) {
    // Encoded packets are never combined again.
    out.push_back({TransitionKind::ForwardedEncoded, packet_label(*head), nullptr});
    output_.push_back(std::move(head));
    return out;
  }

  if (ctx.scheme != Scheme::NonCoding) {
    if (audit) {
      for (const auto& entry : input_)
        if (const auto* q = std::get_if<NativePacket>(entry.get())) (*audit)(*p, *q);
    }
    if (auto idx = find_partner(*p, input_, ctx, input_flows_.size())) {
      const auto it = input_.begin() + static_cast<std::ptrdiff_t>(*idx);
      const auto& q = std::get<NativePacket>(**it);
      auto encoded = std::make_shared<const Packet>(xor_encode(*p, q));
      count_input(**it, -1);
      input_.erase(it);
      encoded_.try_emplace(seen_key(*encoded, Role::Addressed), encoded);
      ++stats_.encodes;
      out.push_back({TransitionKind::Encoded, packet_label(*encoded), nullptr});
      output_.push_back(std::move(encoded));
      return out;
    }
  }
  out.push_back({TransitionKind::ForwardedNative, to_string(p->uid), nullptr});
  output_.push_back(std::move(head));
  return out;
}

std::optional<Transmission> Node::on_send(const SendParams& params) {
  if (output_.empty()) return std::nullopt;
  PacketPtr head = std::move(output_.front());
  output_.pop_front();

  Transmission tx;
  tx.sender = id_;
  std::size_t payload_bytes = 0;
  if (const auto* native = std::get_if<NativePacket>(head.get())) {
    NativePacket p = annotate_holders(*native, id_, neighbors_);
    ++p.hop_index;
    tx.addressed_receivers.push_back(p.route.at(p.hop_index));
    tx.header_bytes = params.holders_on_wire ? p.holders.wire_bytes() : 0;
    payload_bytes = p.payload.size();
    tx.packet = std::make_shared<const Packet>(std::move(p));
  } else {
    EncodedPacket e = std::get<EncodedPacket>(*head);
    for (auto& c : e.constituents) {
      if (params.holders_on_wire) tx.header_bytes += c.holders.wire_bytes();
      if (!c.active) continue;
      ++c.hop_index;
      tx.addressed_receivers.push_back(c.route.at(c.hop_index));
    }
    payload_bytes = e.payload.size();
    tx.encoded = true;
    tx.packet = std::make_shared<const Packet>(std::move(e));
    ++stats_.encoded_transmissions;
  }
  std::sort(tx.addressed_receivers.begin(), tx.addressed_receivers.end());
  tx.addressed_receivers.erase(std::unique(tx.addressed_receivers.begin(), tx.addressed_receivers.end()),
                               tx.addressed_receivers.end());
  for (NodeId n : neighbors_)
    if (!std::binary_search(tx.addressed_receivers.begin(), tx.addressed_receivers.end(), n))
      tx.overhearers.push_back(n);

  const std::size_t bytes = payload_bytes + (params.count_header_overhead ? tx.header_bytes : 0);
  tx.duration = airtime(bytes, params.channel_rate_bps);
  ++stats_.transmissions;
  return tx;
}

ReceptionReport Node::publish_reception_report() const {
  ReceptionReport report{id_, {}};
  report.uids.reserve(natives_.size());
  for (const auto& [uid, _] : natives_) report.uids.push_back(uid);
  std::sort(report.uids.begin(), report.uids.end());
  return report;
}

}  // namespace excode
