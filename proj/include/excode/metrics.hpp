#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "excode/scenario.hpp"

namespace excode {

/// Raw counters accumulated by the event loop.
struct Counters {
  std::uint64_t generated = 0;
  std::uint64_t generated_bytes = 0;
  std::uint64_t delivered = 0;
  std::uint64_t delivered_bytes = 0;
  double delay_sum_s = 0.0;
  std::uint64_t total_tx = 0;
  std::uint64_t encoded_tx = 0;
  std::uint64_t encodes = 0;
  std::uint64_t decode_failures = 0;
  std::uint64_t header_bytes = 0;
  std::vector<std::uint64_t> per_node_encodes;
};

struct MetricsReport {
  double throughput_kbps = 0.0;
  double offered_kbps = 0.0;
  /// Encoded transmissions over all data transmissions.
  double encoded_fraction = 0.0;
  double delivery_ratio = 0.0;
  /// Over delivered packets only; absent when nothing was delivered.
  std::optional<double> mean_delay_s;
  std::uint64_t total_tx = 0;
  std::uint64_t encoded_tx = 0;
  std::uint64_t encode_count = 0;
  std::uint64_t decode_failures = 0;
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t header_bytes = 0;
  std::vector<std::uint64_t> per_node_opportunities;
};

MetricsReport finalize(const Counters& counters, const Scenario& scenario);

/// `scheme,seed,flows,offered_kbps,throughput_kbps,encoded_frac,pdr,mean_delay_s,total_tx,encodes,decode_failures`
std::string csv_header();
std::string csv_row(const MetricsReport& report, Scheme scheme, std::uint64_t seed, std::size_t flows);

}  // namespace excode
