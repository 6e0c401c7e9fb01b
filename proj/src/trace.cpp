#include "excode/trace.hpp"

#include <charconv>
#include <ostream>

namespace excode {

namespace {

// Appends `sec.nnnnnnnnn`; simulation time is never negative.
void append_time(std::string& out, SimTime t) {
  const auto ns = t.count();
  char buf[24];
  auto end = std::to_chars(buf, buf + sizeof buf, ns / 1'000'000'000).ptr;
  out.append(buf, end);
  out += '.';
  char frac[9];
  auto rem = ns % 1'000'000'000;
  for (int i = 8; i >= 0; --i, rem /= 10) frac[i] = static_cast<char>('0' + rem % 10);
  out.append(frac, 9);
}

}  // namespace

std::string format_time(SimTime t) {
  std::string s;
  append_time(s, t);
  return s;
}

void TraceLog::record(SimTime time, NodeId node, std::string_view event, std::string_view packet,
                      std::string_view detail) {
  std::string& line = scratch_;
  line.clear();
  append_time(line, time);
  line += ',';
  char buf[12];
  line.append(buf, std::to_chars(buf, buf + sizeof buf, node).ptr);
  line += ',';
  line += event;
  line += ',';
  line += packet;
  line += ',';
  line += detail;
  for (unsigned char c : line) {
    hash_ ^= c;
    hash_ *= 0x100000001b3ULL;
  }
  hash_ ^= '\n';
  hash_ *= 0x100000001b3ULL;
  ++count_;
  if (keep_lines_) lines_.push_back(line);
}

void TraceLog::write_csv(std::ostream& os) const {
  os << kHeader << '\n';
  for (const auto& l : lines_) os << l << '\n';
}

}  // namespace excode
