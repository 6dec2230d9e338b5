#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "aodv/config.hpp"
#include "aodv/types.hpp"

namespace aodv {

struct RreqKey {
  NodeId originator;
  std::uint32_t rreq_id = 0;

  friend auto operator<=>(const RreqKey&, const RreqKey&) = default;
};

struct NodeState {
  NodeId self;
  SequenceNumber own_sn = 1;
  std::uint32_t next_rreq_id = 1;
  RoutingTable table;
  std::vector<RreqKey> rreq_seen;  // sorted
  std::vector<NodeId> buffered;    // sorted multiset of destinations awaiting a route

  [[nodiscard]] bool has_seen(const RreqKey& key) const;
  void remember(const RreqKey& key);

  friend bool operator==(const NodeState&, const NodeState&) = default;
};

/// Fresh node state. Under optimal-only self-entries the node starts with
/// (self, own_sn, known, valid, 0, self).
NodeState make_node(NodeId self, const InterpretationConfig& cfg);

struct BroadcastRreq {
  RreqMessage rreq;
  friend bool operator==(const BroadcastRreq&, const BroadcastRreq&) = default;
};

struct UnicastRrep {
  NodeId target;
  RrepMessage rrep;
  friend bool operator==(const UnicastRrep&, const UnicastRrep&) = default;
};

using Emission = std::variant<BroadcastRreq, UnicastRrep>;

enum class Anomaly : std::uint8_t {
  no_reverse_route,  // a reply could not be routed toward its originator
};

struct HandlerOutcome {
  NodeState state;
  std::vector<Emission> emissions;
  std::optional<Anomaly> anomaly;
};

struct Origination {
  NodeState state;
  RreqMessage rreq;
};

/// Result of an invalidation pass. `rerr` is set whenever at least one entry
/// was invalidated; it is only transmitted when `recipients` is non-empty.
struct InvalidationOutcome {
  NodeState state;
  std::optional<RerrMessage> rerr;
  NodeSet recipients;
};

Origination originate_rreq(NodeState state, NodeId dest, const InterpretationConfig& cfg);

RoutingTableEntry update_previous_hop(const std::optional<RoutingTableEntry>& entry, NodeId prev,
                                      const InterpretationConfig& cfg);

/// `rreq.hop_count` must already count the hop from `prev`.
RoutingTableEntry update_reverse_route(const std::optional<RoutingTableEntry>& entry, const RreqMessage& rreq,
                                       NodeId prev);

/// Returns nullopt when the existing entry is kept. `rrep.hop_count` must
/// already count the hop from `prev`.
std::optional<RoutingTableEntry> update_forward_route(const std::optional<RoutingTableEntry>& entry,
                                                      const RrepMessage& rrep, NodeId prev,
                                                      const InterpretationConfig& cfg);

HandlerOutcome handle_rreq(NodeState state, RreqMessage rreq, NodeId prev, const InterpretationConfig& cfg);
HandlerOutcome handle_rrep(NodeState state, RrepMessage rrep, NodeId prev, const InterpretationConfig& cfg);

InvalidationOutcome detect_link_break(NodeState state, NodeId broken_neighbor);
InvalidationOutcome handle_rerr(NodeState state, const RerrMessage& rerr, NodeId prev,
                                const InterpretationConfig& cfg);

}  // namespace aodv
