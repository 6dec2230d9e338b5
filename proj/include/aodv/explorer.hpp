#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aodv/checker.hpp"
#include "aodv/config.hpp"
#include "aodv/netsim.hpp"
#include "aodv/scenario.hpp"

namespace aodv {

enum class InitialLinks : std::uint8_t { none, line, complete };

struct ExploreBounds {
  std::size_t node_count = 3;            // 2..5
  std::size_t max_events = 8;            // search depth
  std::size_t max_link_changes = 2;      // LinkUp/LinkDown events per path
  std::size_t max_route_requests = 2;    // NewPacket events per path
  std::size_t max_states = 4'000'000;    // visited-state store capacity
  InitialLinks initial_links = InitialLinks::line;
};

/// Throws std::invalid_argument describing the first bad field.
void validate_bounds(const ExploreBounds& bounds);

/// Nodes n0..n{k-1} with the links selected by `initial_links`.
Topology explore_topology(const ExploreBounds& bounds);

struct LoopWitness {
  LoopReport loop;
  std::vector<Event> events;
};

struct DecrementWitness {
  MonotonicityViolation violation;  // step_index is relative to the last event
  std::vector<Event> events;
};

struct ExploreResult {
  Topology initial;
  std::size_t states_visited = 0;
  std::size_t transitions = 0;
  std::vector<LoopWitness> loops;          // one per distinct loop, shortest witness first found
  std::size_t monotonicity_violations = 0;
  std::vector<DecrementWitness> decrements;  // first witness per (node, destination)
  bool exhausted = false;
};

/// Called once for every distinct reachable state, in discovery order.
using StateVisitor = std::function<void(const GlobalState&)>;

/// Breadth-first enumeration of event sequences up to `bounds`, pruning
/// states already seen (the key includes the budgets still available).
ExploreResult explore(const InterpretationConfig& cfg, const ExploreBounds& bounds,
                      const StateVisitor& visit = {});

/// Same search, starting after `prefix` has been replayed on `initial`.
/// Witnesses include the prefix, so they replay from `initial`.
ExploreResult explore_from(const Topology& initial, std::span<const Event> prefix, const InterpretationConfig& cfg,
                           const ExploreBounds& bounds, const StateVisitor& visit = {});

class WitnessError : public std::runtime_error {
 public:
  WitnessError(std::size_t index, const std::string& what)
      : std::runtime_error("event " + std::to_string(index) + ": " + what), index_(index) {}
  [[nodiscard]] std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Deterministic replay from a fresh network over `initial`. Throws
/// WitnessError naming the first malformed event.
GlobalState replay_witness(const Topology& initial, std::span<const Event> events, const InterpretationConfig& cfg);

/// A runnable scenario for a loop witness, ending in the matching assert-loop.
Scenario witness_scenario(const Topology& initial, const LoopWitness& w, const InterpretationConfig& cfg,
                          const std::string& name);

}  // namespace aodv
