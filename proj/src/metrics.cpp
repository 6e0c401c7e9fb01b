#include "excode/metrics.hpp"

#include <cstdio>

namespace excode {

MetricsReport finalize(const Counters& c, const Scenario& scenario) {
  MetricsReport r;
  const double duration = scenario.duration_s;
  r.throughput_kbps = duration > 0 ? static_cast<double>(c.delivered_bytes) * 8.0 / duration / 1000.0 : 0.0;
  r.offered_kbps = duration > 0 ? static_cast<double>(c.generated_bytes) * 8.0 / duration / 1000.0 : 0.0;
  r.encoded_fraction = c.total_tx ? static_cast<double>(c.encoded_tx) / static_cast<double>(c.total_tx) : 0.0;
  r.delivery_ratio = c.generated ? static_cast<double>(c.delivered) / static_cast<double>(c.generated) : 0.0;
  if (c.delivered) r.mean_delay_s = c.delay_sum_s / static_cast<double>(c.delivered);
  r.total_tx = c.total_tx;
  r.encoded_tx = c.encoded_tx;
  r.encode_count = c.encodes;
  r.decode_failures = c.decode_failures;
  r.generated = c.generated;
  r.delivered = c.delivered;
  r.header_bytes = c.header_bytes;
  r.per_node_opportunities = c.per_node_encodes;
  return r;
}

std::string csv_header() {
  return "scheme,seed,flows,offered_kbps,throughput_kbps,encoded_frac,pdr,mean_delay_s,total_tx,encodes,"
         "decode_failures";
}

std::string csv_row(const MetricsReport& r, Scheme scheme, std::uint64_t seed, std::size_t flows) {
  char delay[32] = "";
  if (r.mean_delay_s) std::snprintf(delay, sizeof delay, "%.6f", *r.mean_delay_s);
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%llu,%zu,%.3f,%.3f,%.6f,%.6f,%s,%llu,%llu,%llu",
                std::string(to_string(scheme)).c_str(), static_cast<unsigned long long>(seed), flows,
                r.offered_kbps, r.throughput_kbps, r.encoded_fraction, r.delivery_ratio, delay,
                static_cast<unsigned long long>(r.total_tx), static_cast<unsigned long long>(r.encode_count),
                static_cast<unsigned long long>(r.decode_failures));
  return buf;
}

}  // namespace excode
