#include "excode/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace excode {

std::vector<SimTime> generate_traffic(const FlowSpec& flow, SimTime horizon) {
  std::vector<SimTime> times;
  if (!(flow.rate > 0.0)) return times;
  const SimTime start = from_seconds(flow.start);
  const SimTime stop = std::isfinite(flow.stop) ? std::min(from_seconds(flow.stop), horizon) : horizon;
  for (std::uint64_t k = 0;; ++k) {
    const SimTime t = start + from_seconds(static_cast<double>(k) / flow.rate);
    if (t >= stop) break;
    times.push_back(t);
  }
  return times;
}

std::vector<Delivery> broadcast(const Transmission& tx, const Topology& topology) {
  std::vector<Delivery> out;
  for (NodeId n : topology.neighbors(tx.sender)) {
    const bool addressed =
        std::binary_search(tx.addressed_receivers.begin(), tx.addressed_receivers.end(), n);
    out.push_back({n, addressed ? Role::Addressed : Role::Overheard});
  }
  return out;
}

void validate(const Scenario& s, const Topology& topology) {
  if (!(s.duration_s > 0.0)) throw ScenarioInvalid("duration must be positive");
  if (s.drain_s < 0.0) throw ScenarioInvalid("drain must be non-negative");
  if (!(s.channel_rate_bps > 0.0)) throw ScenarioInvalid("channel rate must be positive");
  std::unordered_set<FlowId> ids;
  for (const auto& f : s.flows) {
    const std::string name = "flow " + std::to_string(f.flow) + ": ";
    if (!ids.insert(f.flow).second) throw ScenarioInvalid(name + "duplicate flow id");
    if (!(f.rate > 0.0)) throw ScenarioInvalid(name + "rate must be positive");
    if (f.packet_size == 0) throw ScenarioInvalid(name + "packet_size must be positive");
    if (!topology.contains(f.src) || !topology.contains(f.dst))
      throw ScenarioInvalid(name + "endpoint outside topology");
    if (f.src == f.dst) throw ScenarioInvalid(name + "src equals dst");
    if (f.start < 0.0 || f.stop < f.start) throw ScenarioInvalid(name + "invalid start/stop");
    if (hop_distances(topology, f.src)[f.dst] < 0)
      throw ScenarioInvalid(name + "no route from " + std::to_string(f.src) + " to " + std::to_string(f.dst));
  }
}

namespace {

struct Event {
  SimTime time;
  std::uint64_t ordinal;
  EventKind kind;
  NodeId node;
  std::size_t flow_index = 0;
  std::uint32_t seq = 0;
  std::shared_ptr<const Transmission> tx;
};

struct Later {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.ordinal > b.ordinal;
  }
};

struct FlowState {
  std::uint64_t generated = 0;
  std::int64_t last_delivered_seq = -1;
  std::vector<std::uint8_t> delivered;  // indexed by seq
};

class Simulation {
 public:
  Simulation(const Scenario& scenario, const RunOptions& options)
      : sc_(scenario), opts_(options), topo_(scenario.topology.build()), trace_(options.keep_trace) {
    validate(sc_, topo_);
    nodes_.reserve(topo_.size());
    for (NodeId n = 0; n < topo_.size(); ++n) {
      auto nb = topo_.neighbors(n);
      nodes_.emplace_back(n, std::vector<NodeId>(nb.begin(), nb.end()));
    }
    for (const auto& f : sc_.flows) routes_.push_back(shortest_path(topo_, f.src, f.dst));
    flows_.resize(sc_.flows.size());
    busy_until_.assign(topo_.size(), SimTime{-1});
    busy_.assign(topo_.size(), 0);
    wake_pending_.assign(topo_.size(), 0);
    counters_.per_node_encodes.assign(topo_.size(), 0);
    publish_reports_ = sc_.scheme == Scheme::Cope || opts_.audit_pairs || opts_.verify_reports;
    params_.channel_rate_bps = sc_.channel_rate_bps;
    params_.holders_on_wire = sc_.scheme == Scheme::Excode;
    params_.count_header_overhead = sc_.count_header_overhead;
    gen_horizon_ = from_seconds(sc_.duration_s);
    end_ = from_seconds(sc_.duration_s + sc_.drain_s);
  }

  SimulationResult execute() {
    for (std::size_t i = 0; i < sc_.flows.size(); ++i) schedule_generation(i, 0);

    while (!events_.empty()) {
      if (events_.top().time > end_) break;
      Event ev = events_.top();
      events_.pop();
      if (ev.time < now_) ++diag_.causality_violations;
      now_ = ev.time;
      switch (ev.kind) {
        case EventKind::PacketGen: on_generate(ev); break;
        case EventKind::TxEnd: on_tx_end(ev); break;
        case EventKind::NodeWake: on_wake(ev.node); break;
      }
      if (opts_.verify_reports) verify_reports();
    }
    check_conservation();

    SimulationResult result{finalize(counters_, sc_), std::move(trace_), std::move(diag_), {}, routes_};
    for (const auto& n : nodes_) result.node_stats.push_back(n.stats());
    return result;
  }

 private:
  void push(Event ev) {
    ev.ordinal = next_ordinal_++;
    events_.push(std::move(ev));
  }

  void schedule_generation(std::size_t flow_index, std::uint32_t seq) {
    const auto& f = sc_.flows[flow_index];
    const SimTime stop = std::isfinite(f.stop) ? std::min(from_seconds(f.stop), gen_horizon_) : gen_horizon_;
    const SimTime t = from_seconds(f.start) + from_seconds(static_cast<double>(seq) / f.rate);
    if (t >= stop) return;
    push(Event{t, 0, EventKind::PacketGen, f.src, flow_index, seq, nullptr});
  }

  void schedule_wake(NodeId n) {
    if (wake_pending_[n]) return;
    wake_pending_[n] = 1;
    push(Event{now_, 0, EventKind::NodeWake, n, 0, 0, nullptr});
  }

  void on_generate(const Event& ev) {
    const auto& f = sc_.flows[ev.flow_index];
    NativePacket p;
    p.uid = {f.flow, ev.seq};
    p.src = f.src;
    p.dst = f.dst;
    p.route = routes_[ev.flow_index];
    p.payload = make_payload(sc_.seed, p.uid, f.packet_size);
    p.created_at = now_;
    auto& fs = flows_[ev.flow_index];
    ++fs.generated;
    ++counters_.generated;
    counters_.generated_bytes += f.packet_size;
    trace_.record(now_, f.src, "gen", to_string(p.uid));
    apply(f.src, nodes_[f.src].on_generate(std::move(p)));
    schedule_wake(f.src);
    schedule_generation(ev.flow_index, ev.seq + 1);
  }

  void on_wake(NodeId n) {
    wake_pending_[n] = 0;
    if (busy_[n]) return;
    Node& node = nodes_[n];
    if (node.output_queue().empty() && !node.input_queue().empty()) {
      CodingContext ctx{sc_.scheme, &node.reports(), &topo_, n};
      PairAudit audit_fn = [this, n](const NativePacket& p, const NativePacket& q) { audit(n, p, q); };
      apply(n, node.process_input(ctx, opts_.audit_pairs ? &audit_fn : nullptr));
    }
    auto tx = node.on_send(params_);
    if (!tx) return;
    if (now_ < busy_until_[n]) ++diag_.radio_overlaps;
    busy_[n] = 1;
    busy_until_[n] = now_ + tx->duration;
    ++counters_.total_tx;
    if (tx->encoded) ++counters_.encoded_tx;
    counters_.header_bytes += tx->header_bytes;
    std::string detail = "to";
    for (NodeId r : tx->addressed_receivers) detail += " " + std::to_string(r);
    trace_.record(now_, n, tx->encoded ? "tx_start_encoded" : "tx_start", packet_label(*tx->packet), detail);
    const SimTime end = now_ + tx->duration;
    push(Event{end, 0, EventKind::TxEnd, n, 0, 0, std::make_shared<const Transmission>(std::move(*tx))});
  }

  void on_tx_end(const Event& ev) {
    const Transmission& tx = *ev.tx;
    busy_[tx.sender] = 0;
    trace_.record(now_, tx.sender, "tx_end", packet_label(*tx.packet));
    for (const auto& d : broadcast(tx, topo_)) {
      trace_.record(now_, d.receiver, d.role == Role::Addressed ? "rx_addressed" : "rx_overheard",
                    packet_label(*tx.packet));
      apply(d.receiver, nodes_[d.receiver].on_receive(tx.packet, d.role, now_));
    }
    schedule_wake(tx.sender);
  }

  void apply(NodeId n, const std::vector<Transition>& transitions) {
    for (const auto& t : transitions) {
      trace_.record(now_, n, to_string(t.kind), t.label);
      switch (t.kind) {
        case TransitionKind::Buffered:
          if (publish_reports_)
            for (NodeId nb : topo_.neighbors(n)) nodes_[nb].reports().record(n, t.native->uid);
          break;
        case TransitionKind::Delivered: deliver(n, *t.native); break;
        case TransitionKind::DecodeFailed: ++counters_.decode_failures; break;
        case TransitionKind::Encoded:
          ++counters_.encodes;
          ++counters_.per_node_encodes[n];
          break;
        case TransitionKind::QueuedInput: schedule_wake(n); break;
        default: break;
      }
    }
  }

  std::size_t flow_index(FlowId id) const {
    for (std::size_t i = 0; i < sc_.flows.size(); ++i)
      if (sc_.flows[i].flow == id) return i;
    return sc_.flows.size();
  }

  void deliver(NodeId n, const NativePacket& p) {
    const std::size_t fi = flow_index(p.uid.flow);
    if (fi == sc_.flows.size() || sc_.flows[fi].dst != n) {
      diag_.problems.push_back("delivery of " + to_string(p.uid) + " at wrong node " + std::to_string(n));
      return;
    }
    const auto& spec = sc_.flows[fi];
    if (!(p.payload == make_payload(sc_.seed, p.uid, spec.packet_size))) {
      ++diag_.payload_mismatches;
      diag_.problems.push_back("payload mismatch for " + to_string(p.uid));
    }
    auto& fs = flows_[fi];
    if (fs.delivered.size() <= p.uid.seq) fs.delivered.resize(p.uid.seq + 1, 0);
    if (fs.delivered[p.uid.seq]) {
      ++diag_.duplicate_deliveries;
      return;
    }
    fs.delivered[p.uid.seq] = 1;
    if (static_cast<std::int64_t>(p.uid.seq) <= fs.last_delivered_seq) {
      diag_.fifo_ok = false;
      diag_.problems.push_back("out-of-order delivery of " + to_string(p.uid));
    }
    fs.last_delivered_seq = std::max<std::int64_t>(fs.last_delivered_seq, p.uid.seq);
    ++counters_.delivered;
    counters_.delivered_bytes += spec.packet_size;
    counters_.delay_sum_s += to_seconds(now_ - p.created_at);
  }

  void audit(NodeId self, const NativePacket& p, const NativePacket& q) {
    auto& a = diag_.audit;
    ++a.pairs;
    const bool ex = excode_can_code(p, q);
    const bool cope = cope_can_code(p, q, nodes_[self].reports(), topo_, self);
    const bool truth = p.uid.flow != q.uid.flow && nodes_[p.dst].holds(q.uid) && nodes_[q.dst].holds(p.uid);
    a.excode_true += ex;
    a.cope_true += cope;
    a.cope_only += cope && !ex;
    a.excode_unsound += ex && !truth;
    a.truth_true += truth;
    a.missed += truth && !ex;
  }

  void verify_reports() {
    for (const auto& node : nodes_) {
      for (NodeId nb : node.neighbors()) {
        const auto& other = nodes_[nb];
        if (node.reports().size(nb) != other.buffered_natives()) {
          ++diag_.report_mismatches;
          continue;
        }
        for (const auto& uid : other.publish_reception_report().uids)
          if (!node.reports().holds(nb, uid)) ++diag_.report_mismatches;
      }
    }
  }

  // Every generated packet is delivered exactly once or still sits in exactly
  // one queue or transmission.
  void check_conservation() {
    std::unordered_map<std::uint64_t, int> pending;
    auto count_packet = [&](const Packet& pkt) {
      if (const auto* n = std::get_if<NativePacket>(&pkt)) {
        ++pending[n->uid.key()];
        return;
      }
      for (const auto& c : std::get<EncodedPacket>(pkt).constituents)
        if (c.active) ++pending[c.uid.key()];
    };
    for (const auto& node : nodes_) {
      for (const auto& p : node.input_queue()) count_packet(*p);
      for (const auto& p : node.output_queue()) count_packet(*p);
    }
    auto rest = events_;
    while (!rest.empty()) {
      if (rest.top().kind == EventKind::TxEnd) count_packet(*rest.top().tx->packet);
      rest.pop();
    }
    std::uint64_t in_flight = 0;
    for (std::size_t fi = 0; fi < sc_.flows.size(); ++fi) {
      const auto& fs = flows_[fi];
      for (std::uint32_t seq = 0; seq < fs.generated; ++seq) {
        const PacketUid uid{sc_.flows[fi].flow, seq};
        const bool delivered = seq < fs.delivered.size() && fs.delivered[seq];
        auto it = pending.find(uid.key());
        const int queued = it == pending.end() ? 0 : it->second;
        in_flight += static_cast<std::uint64_t>(queued);
        if ((delivered ? 1 : 0) + queued != 1) {
          diag_.conservation_ok = false;
          if (diag_.problems.size() < 50)
            diag_.problems.push_back("conservation: " + to_string(uid) + " delivered=" +
                                     std::to_string(delivered) + " queued=" + std::to_string(queued));
        }
      }
    }
    diag_.in_flight = in_flight;
  }

  const Scenario& sc_;
  RunOptions opts_;
  Topology topo_;
  std::vector<Node> nodes_;
  std::vector<Route> routes_;
  std::vector<FlowState> flows_;
  std::priority_queue<Event, std::vector<Event>, Later> events_;
  std::uint64_t next_ordinal_ = 0;
  SimTime now_{0};
  SimTime gen_horizon_{0};
  SimTime end_{0};
  std::vector<SimTime> busy_until_;
  std::vector<std::uint8_t> busy_;
  std::vector<std::uint8_t> wake_pending_;
  bool publish_reports_ = false;
  SendParams params_;
  Counters counters_;
  TraceLog trace_;
  Diagnostics diag_;
};

}  // namespace

SimulationResult run(const Scenario& scenario, const RunOptions& options) {
  try {
    (void)scenario.topology.build();
  } catch (const std::invalid_argument& e) {
    throw ScenarioInvalid(std::string("topology: ") + e.what());
  }
  return Simulation(scenario, options).execute();
}

}  // namespace excode
