#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "excode/types.hpp"

namespace excode {

/// Line-oriented event log: `time,node,event,packet_uid,detail`.
/// Every record feeds a running FNV-1a hash; full lines are kept only when
/// requested.
class TraceLog {
 public:
  explicit TraceLog(bool keep_lines = false) : keep_lines_(keep_lines) {}

  void record(SimTime time, NodeId node, std::string_view event, std::string_view packet,
              std::string_view detail = {});

  std::uint64_t hash() const { return hash_; }
  std::size_t size() const { return count_; }
  const std::vector<std::string>& lines() const { return lines_; }
  void write_csv(std::ostream& os) const;

  static constexpr std::string_view kHeader = "time,node,event,packet_uid,detail";

 private:
  bool keep_lines_;
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
  std::size_t count_ = 0;
  std::vector<std::string> lines_;
  std::string scratch_;
};

std::string format_time(SimTime t);

}  // namespace excode
