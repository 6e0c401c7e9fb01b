#pragma once

#include <vector>

#include "excode/packet.hpp"

namespace excode {

/// One broadcast on the shared channel.
struct Transmission {
  NodeId sender = 0;
  PacketPtr packet;
  SimTime duration{0};
  /// Next hops or final destinations of the packet's active branches.
  std::vector<NodeId> addressed_receivers;
  /// All remaining neighbours of the sender.
  std::vector<NodeId> overhearers;
  /// Holder-set bytes carried in the header.
  std::size_t header_bytes = 0;
  bool encoded = false;
};

/// Time on air for `bytes` at `rate_bps`, rounded to the nearest nanosecond.
SimTime airtime(std::size_t bytes, double rate_bps);

}  // namespace excode
