#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aodv/config.hpp"
#include "aodv/node.hpp"
#include "aodv/types.hpp"

namespace aodv {

/// Raised for an event that does not make sense against the current network
/// (unknown node, self-link, ...).
class EventError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Topology {
 public:
  Topology() = default;
  explicit Topology(std::vector<std::string> names);

  /// Adds a node and returns its id. Names must be unique.
  NodeId add_node(std::string name);

  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] bool contains(NodeId n) const { return n.value < names_.size(); }
  [[nodiscard]] std::optional<NodeId> find(std::string_view name) const;
  [[nodiscard]] const std::string& name(NodeId n) const { return names_.at(n.value); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

  [[nodiscard]] bool linked(NodeId a, NodeId b) const;
  [[nodiscard]] NodeSet neighbors(NodeId n) const { return adjacency_.at(n.value); }
  void link(NodeId a, NodeId b);
  void unlink(NodeId a, NodeId b);

  /// Links as (a, b) pairs with a < b, ascending.
  [[nodiscard]] std::vector<std::pair<NodeId, NodeId>> links() const;

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  void check_pair(NodeId a, NodeId b) const;

  std::vector<std::string> names_;
  std::vector<NodeSet> adjacency_;
};

enum class EventKind : std::uint8_t { link_up, link_down, new_packet, deliver_next, deliver_all };

struct Event {
  EventKind kind = EventKind::deliver_all;
  NodeId first;   // link endpoint, packet source, or delivering node
  NodeId second;  // link endpoint or packet destination

  static Event link_up(NodeId a, NodeId b) { return {EventKind::link_up, a, b}; }
  static Event link_down(NodeId a, NodeId b) { return {EventKind::link_down, a, b}; }
  static Event new_packet(NodeId src, NodeId dest) { return {EventKind::new_packet, src, dest}; }
  static Event deliver_next(NodeId n) { return {EventKind::deliver_next, n, NodeId{}}; }
  static Event deliver_all() { return {EventKind::deliver_all, NodeId{}, NodeId{}}; }

  friend bool operator==(const Event&, const Event&) = default;
};

struct QueuedMessage {
  ControlMessage message;
  NodeId sender;

  friend bool operator==(const QueuedMessage&, const QueuedMessage&) = default;
};

enum class StepKind : std::uint8_t {
  link_up,
  link_down,
  originate,       // NewPacket without a valid route: RREQ broadcast
  forward_data,    // NewPacket over an existing valid route
  deliver,         // a queued control message was handled
  link_break,      // detect_link_break ran at `node` for neighbour `peer`
  send_dropped,    // unicast to an unlinked neighbour
};

struct EntryChange {
  NodeId node;
  std::optional<RoutingTableEntry> before;
  RoutingTableEntry after;

  friend bool operator==(const EntryChange&, const EntryChange&) = default;
};

struct TraceStep {
  std::size_t event_index = 0;
  StepKind kind = StepKind::deliver;
  NodeId node;
  NodeId peer;
  std::optional<ControlMessage> message;
  std::optional<Anomaly> anomaly;
  std::vector<EntryChange> changes;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

using Trace = std::vector<TraceStep>;

struct GlobalState {
  Topology topology;
  std::vector<NodeState> nodes;
  std::vector<std::vector<QueuedMessage>> inflight;  // FIFO per receiving node
  Trace trace;
  std::size_t events_applied = 0;

  [[nodiscard]] const NodeState& node(NodeId n) const { return nodes.at(n.value); }
  [[nodiscard]] bool quiescent() const;

  friend bool operator==(const GlobalState&, const GlobalState&) = default;
};

GlobalState make_network(Topology topology, const InterpretationConfig& cfg);

enum class StepResult : std::uint8_t { progress, no_op };

/// Deliveries allowed within one deliver-all before it gives up. A drain that
/// hits this limit is reported as an EventError.
inline constexpr std::size_t kDrainLimit = 100000;

/// Throws EventError when `e` is malformed against `g`.
void validate_event(const GlobalState& g, const Event& e);

StepResult apply_event(GlobalState& g, const Event& e, const InterpretationConfig& cfg);

/// Value-returning form.
[[nodiscard]] GlobalState applied(GlobalState g, const Event& e, const InterpretationConfig& cfg);

/// Sends `msg` from `sender` to `target` if they are linked; otherwise the
/// sender treats `target` as unreachable and runs its link-break handling.
void unicast_or_fail(GlobalState& g, NodeId sender, NodeId target, ControlMessage msg,
                     const InterpretationConfig& cfg);

}  // namespace aodv
