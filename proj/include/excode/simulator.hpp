#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "excode/metrics.hpp"
#include "excode/node.hpp"
#include "excode/scenario.hpp"
#include "excode/trace.hpp"
#include "excode/transmission.hpp"

namespace excode {

enum class EventKind { PacketGen, TxEnd, NodeWake };

/// Send times of a CBR flow: start + k/rate for every such instant before
/// min(stop, horizon).
std::vector<SimTime> generate_traffic(const FlowSpec& flow, SimTime horizon);

struct Delivery {
  NodeId receiver;
  Role role;
};

/// Every neighbour of the sender receives: addressed receivers as such,
/// everyone else as an overhearer. Ordered by node id.
std::vector<Delivery> broadcast(const Transmission& tx, const Topology& topology);

struct RunOptions {
  bool keep_trace = false;
  /// Evaluate every coding predicate and the destination-buffer ground truth
  /// on each pair the partner search looks at.
  bool audit_pairs = false;
  /// Cross-check every neighbour report table against the true buffers after
  /// every event. Quadratic; small scenarios only.
  bool verify_reports = false;
};

struct PairAuditCounts {
  std::uint64_t pairs = 0;
  std::uint64_t excode_true = 0;
  std::uint64_t cope_true = 0;
  std::uint64_t cope_only = 0;       ///< cope true, excode false
  std::uint64_t excode_unsound = 0;  ///< excode true, destinations lack the counterpart
  std::uint64_t truth_true = 0;      ///< destinations hold the counterparts
  std::uint64_t missed = 0;          ///< truth true, excode false
};

struct Diagnostics {
  bool conservation_ok = true;
  bool fifo_ok = true;
  std::uint64_t causality_violations = 0;
  std::uint64_t radio_overlaps = 0;
  std::uint64_t payload_mismatches = 0;
  std::uint64_t duplicate_deliveries = 0;
  std::uint64_t report_mismatches = 0;
  std::uint64_t in_flight = 0;
  PairAuditCounts audit;
  std::vector<std::string> problems;

  bool clean() const {
    return conservation_ok && fifo_ok && causality_violations == 0 && radio_overlaps == 0 &&
           payload_mismatches == 0 && duplicate_deliveries == 0 && report_mismatches == 0;
  }
};

struct SimulationResult {
  MetricsReport metrics;
  TraceLog trace;
  Diagnostics diagnostics;
  std::vector<NodeStats> node_stats;
  std::vector<Route> routes;
};

/// Runs one scenario to completion. Same scenario, same result, bit for bit.
/// Throws ScenarioInvalid naming the violated constraint.
SimulationResult run(const Scenario& scenario, const RunOptions& options = {});

void validate(const Scenario& scenario, const Topology& topology);

}  // namespace excode
