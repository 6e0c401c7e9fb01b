#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>

namespace excode {

/// Dense node index, 0..n-1 within one topology.
using NodeId = std::uint32_t;
using FlowId = std::uint32_t;

/// Simulation clock. Integer nanoseconds so that equal-length hop chains land
/// on exactly the same instant.
using SimTime = std::chrono::nanoseconds;

inline SimTime from_seconds(double seconds) {
  return SimTime{static_cast<std::int64_t>(std::llround(seconds * 1e9))};
}

inline double to_seconds(SimTime t) { return static_cast<double>(t.count()) * 1e-9; }

}  // namespace excode
