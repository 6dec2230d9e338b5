#pragma once

#include <cstddef>
#include <vector>

#include "aodv/config.hpp"
#include "aodv/netsim.hpp"
#include "aodv/types.hpp"

namespace aodv {

/// A cycle in the next-hop graph for one destination, rotated so that it
/// starts at its smallest NodeId.
struct LoopReport {
  NodeId destination;
  std::vector<NodeId> cycle;

  friend auto operator<=>(const LoopReport&, const LoopReport&) = default;
};

struct MonotonicityViolation {
  NodeId node;
  NodeId destination;
  std::size_t step_index = 0;  // position in the trace
  SequenceNumber before = 0;
  SequenceNumber after = 0;

  friend bool operator==(const MonotonicityViolation&, const MonotonicityViolation&) = default;
};

/// Every elementary cycle over valid next-hop edges, one destination at a
/// time, sorted by (destination, cycle).
std::vector<LoopReport> check_loop_freedom(const GlobalState& g);

std::vector<MonotonicityViolation> check_monotonicity(const Trace& trace);

/// Under 3b: nodes whose self-entry is not (self, own_sn, known, valid, 0,
/// self). Otherwise: nodes holding any self-entry, which must be none under
/// 3c/3d and is informational under 3a.
std::vector<NodeId> check_self_entries(const GlobalState& g, const InterpretationConfig& cfg);

}  // namespace aodv
