#include "aodv/netsim.hpp"

#include <algorithm>
#include <utility>

namespace aodv {
namespace {

std::vector<EntryChange> diff_tables(NodeId node, const RoutingTable& before, const RoutingTable& after) {
  std::vector<EntryChange> changes;
  for (const auto& entry : after) {
    const auto* old = before.find(entry.destination);
    if (old != nullptr && *old == entry) continue;
    changes.push_back({node, old ? std::optional<RoutingTableEntry>(*old) : std::nullopt, entry});
  }
  return changes;
}

class Simulator {
 public:
  Simulator(GlobalState& g, const InterpretationConfig& cfg, std::size_t event_index)
      : g_(g), cfg_(cfg), event_index_(event_index) {}

  void record(StepKind kind, NodeId node, NodeId peer, std::vector<EntryChange> changes = {},
              std::optional<ControlMessage> message = std::nullopt, std::optional<Anomaly> anomaly = std::nullopt) {
    g_.trace.push_back(
        TraceStep{event_index_, kind, node, peer, std::move(message), anomaly, std::move(changes)});
  }

  void broadcast(NodeId sender, const RreqMessage& rreq) {
    for (NodeId n : g_.topology.neighbors(sender).members()) {
      g_.inflight[n.value].push_back({rreq, sender});
    }
  }

  void unicast(NodeId sender, NodeId target, ControlMessage msg) {
    if (g_.topology.linked(sender, target)) {
      g_.inflight[target.value].push_back({std::move(msg), sender});
      return;
    }
    record(StepKind::send_dropped, sender, target, {}, std::move(msg));
    link_break(sender, target);
  }

  void link_break(NodeId node, NodeId broken) {
    auto& slot = g_.nodes[node.value];
    const RoutingTable before = slot.table;
    auto outcome = detect_link_break(std::move(slot), broken);
    slot = std::move(outcome.state);
    record(StepKind::link_break, node, broken, diff_tables(node, before, slot.table));
    send_rerr(node, outcome);
  }

  void send_rerr(NodeId sender, const InvalidationOutcome& outcome) {
    if (!outcome.rerr) return;
    for (NodeId r : outcome.recipients.members()) unicast(sender, r, *outcome.rerr);
  }

  void emit(NodeId sender, const std::vector<Emission>& emissions) {
    for (const auto& e : emissions) {
      if (const auto* b = std::get_if<BroadcastRreq>(&e)) {
        broadcast(sender, b->rreq);
      } else {
        const auto& u = std::get<UnicastRrep>(e);
        unicast(sender, u.target, u.rrep);
      }
    }
  }

  void link_down(NodeId a, NodeId b) {
    g_.topology.unlink(a, b);
    record(StepKind::link_down, a, b);
    for (auto [node, other] : {std::pair{a, b}, std::pair{b, a}}) {
      const auto& table = g_.nodes[node.value].table;
      const bool uses_link = std::any_of(table.begin(), table.end(), [other = other](const RoutingTableEntry& e) {
        return e.is_valid() && e.next_hop == other;
      });
      if (uses_link) link_break(node, other);
    }
  }

  void new_packet(NodeId src, NodeId dest) {
    auto& slot = g_.nodes[src.value];
    if (const auto* route = slot.table.find(dest); route != nullptr && route->is_valid()) {
      const NodeId next = route->next_hop;
      record(StepKind::forward_data, src, dest);
      if (next != src && !g_.topology.linked(src, next)) link_break(src, next);
      return;
    }
    const RoutingTable before = slot.table;
    auto origination = originate_rreq(std::move(slot), dest, cfg_);
    slot = std::move(origination.state);
    record(StepKind::originate, src, dest, diff_tables(src, before, slot.table), origination.rreq);
    broadcast(src, origination.rreq);
  }

  void deliver(NodeId node) {
    auto& queue = g_.inflight[node.value];
    QueuedMessage item = std::move(queue.front());
    queue.erase(queue.begin());

    auto& slot = g_.nodes[node.value];
    const RoutingTable before = slot.table;
    const NodeId sender = item.sender;

    if (const auto* rreq = std::get_if<RreqMessage>(&item.message)) {
      auto outcome = handle_rreq(std::move(slot), *rreq, sender, cfg_);
      slot = std::move(outcome.state);
      record(StepKind::deliver, node, sender, diff_tables(node, before, slot.table), std::move(item.message),
             outcome.anomaly);
      emit(node, outcome.emissions);
    } else if (const auto* rrep = std::get_if<RrepMessage>(&item.message)) {
      auto outcome = handle_rrep(std::move(slot), *rrep, sender, cfg_);
      slot = std::move(outcome.state);
      record(StepKind::deliver, node, sender, diff_tables(node, before, slot.table), std::move(item.message),
             outcome.anomaly);
      emit(node, outcome.emissions);
    } else {
      auto outcome = handle_rerr(std::move(slot), std::get<RerrMessage>(item.message), sender, cfg_);
      slot = std::move(outcome.state);
      record(StepKind::deliver, node, sender, diff_tables(node, before, slot.table), std::move(item.message));
      send_rerr(node, outcome);
    }
  }

 private:
  GlobalState& g_;
  const InterpretationConfig& cfg_;
  std::size_t event_index_;
};

}  // namespace

Topology::Topology(std::vector<std::string> names) {
  for (auto& n : names) add_node(std::move(n));
}

NodeId Topology::add_node(std::string name) {
  if (names_.size() >= kMaxNodes) throw EventError("too many nodes (limit " + std::to_string(kMaxNodes) + ")");
  if (name.empty()) throw EventError("empty node name");
  if (find(name)) throw EventError("duplicate node '" + name + "'");
  names_.push_back(std::move(name));
  adjacency_.emplace_back();
  return NodeId{static_cast<std::uint8_t>(names_.size() - 1)};
}

std::optional<NodeId> Topology::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return NodeId{static_cast<std::uint8_t>(i)};
  }
  return std::nullopt;
}

void Topology::check_pair(NodeId a, NodeId b) const {
  if (!contains(a) || !contains(b)) throw EventError("link endpoint is not a declared node");
  if (a == b) throw EventError("self-links are not allowed");
}

bool Topology::linked(NodeId a, NodeId b) const {
  if (!contains(a) || !contains(b) || a == b) return false;
  return adjacency_[a.value].contains(b);
}

void Topology::link(NodeId a, NodeId b) {
  check_pair(a, b);
  adjacency_[a.value].insert(b);
  adjacency_[b.value].insert(a);
}

void Topology::unlink(NodeId a, NodeId b) {
  check_pair(a, b);
  adjacency_[a.value].erase(b);
  adjacency_[b.value].erase(a);
}

std::vector<std::pair<NodeId, NodeId>> Topology::links() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    for (NodeId j : adjacency_[i].members()) {
      if (j.value > i) out.emplace_back(NodeId{static_cast<std::uint8_t>(i)}, j);
    }
  }
  return out;
}

bool GlobalState::quiescent() const {
  return std::all_of(inflight.begin(), inflight.end(), [](const auto& q) { return q.empty(); });
}

GlobalState make_network(Topology topology, const InterpretationConfig& cfg) {
  GlobalState g;
  const std::size_t n = topology.size();
  g.topology = std::move(topology);
  g.nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) g.nodes.push_back(make_node(NodeId{static_cast<std::uint8_t>(i)}, cfg));
  g.inflight.resize(n);
  return g;
}

void validate_event(const GlobalState& g, const Event& e) {
  const auto& topo = g.topology;
  switch (e.kind) {
    case EventKind::link_up:
    case EventKind::link_down:
    case EventKind::new_packet:
      if (!topo.contains(e.first) || !topo.contains(e.second)) throw EventError("event references an unknown node");
      if (e.first == e.second) throw EventError("event endpoints must be distinct");
      break;
    case EventKind::deliver_next:
      if (!topo.contains(e.first)) throw EventError("event references an unknown node");
      break;
    case EventKind::deliver_all:
      break;
  }
}

StepResult apply_event(GlobalState& g, const Event& e, const InterpretationConfig& cfg) {
  validate_event(g, e);
  const std::size_t index = g.events_applied++;
  Simulator sim(g, cfg, index);

  switch (e.kind) {
    case EventKind::link_up:
      if (g.topology.linked(e.first, e.second)) return StepResult::no_op;
      g.topology.link(e.first, e.second);
      sim.record(StepKind::link_up, e.first, e.second);
      return StepResult::progress;
    case EventKind::link_down:
      if (!g.topology.linked(e.first, e.second)) return StepResult::no_op;
      sim.link_down(e.first, e.second);
      return StepResult::progress;
    case EventKind::new_packet:
      sim.new_packet(e.first, e.second);
      return StepResult::progress;
    case EventKind::deliver_next:
      if (g.inflight[e.first.value].empty()) return StepResult::no_op;
      sim.deliver(e.first);
      return StepResult::progress;
    case EventKind::deliver_all: {
      std::size_t delivered = 0;
      while (true) {
        auto it = std::find_if(g.inflight.begin(), g.inflight.end(), [](const auto& q) { return !q.empty(); });
        if (it == g.inflight.end()) break;
        if (++delivered > kDrainLimit) throw EventError("deliver-all did not reach quiescence");
        sim.deliver(NodeId{static_cast<std::uint8_t>(it - g.inflight.begin())});
      }
      return delivered == 0 ? StepResult::no_op : StepResult::progress;
    }
  }
  return StepResult::no_op;
}

GlobalState applied(GlobalState g, const Event& e, const InterpretationConfig& cfg) {
  apply_event(g, e, cfg);
  return g;
}

void unicast_or_fail(GlobalState& g, NodeId sender, NodeId target, ControlMessage msg,
                     const InterpretationConfig& cfg) {
  if (!g.topology.contains(sender) || !g.topology.contains(target) || sender == target) {
    throw EventError("unicast endpoints must be distinct declared nodes");
  }
  Simulator sim(g, cfg, g.events_applied);
  sim.unicast(sender, target, std::move(msg));
}

}  // namespace aodv
