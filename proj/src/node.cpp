#include "aodv/node.hpp"

#include <algorithm>

namespace aodv {
namespace {

bool is_fresher(SequenceNumber incoming, std::uint32_t incoming_hops, const RoutingTableEntry& stored) {
  if (incoming > stored.dsn) return true;
  if (incoming < stored.dsn) return false;
  return !stored.is_valid() || incoming_hops < stored.hop_count;
}

void refresh_optimal_self_entry(NodeState& state, const InterpretationConfig& cfg) {
  if (cfg.self_entry != SelfEntryRule::optimal_only) return;
  NodeSet precursors;
  if (const auto* old = state.table.find(state.self)) precursors = old->precursors;
  state.table.upsert(RoutingTableEntry{state.self, state.own_sn, SnStatus::known, Validity::valid, 0, state.self,
                                       precursors});
}

void apply_previous_hop(NodeState& state, NodeId prev, const InterpretationConfig& cfg) {
  state.table.upsert(update_previous_hop(state.table.lookup(prev), prev, cfg));
}

}  // namespace

bool NodeState::has_seen(const RreqKey& key) const {
  return std::binary_search(rreq_seen.begin(), rreq_seen.end(), key);
}

void NodeState::remember(const RreqKey& key) {
  auto it = std::lower_bound(rreq_seen.begin(), rreq_seen.end(), key);
  if (it == rreq_seen.end() || *it != key) rreq_seen.insert(it, key);
}

NodeState make_node(NodeId self, const InterpretationConfig& cfg) {
  NodeState state;
  state.self = self;
  refresh_optimal_self_entry(state, cfg);
  return state;
}

Origination originate_rreq(NodeState state, NodeId dest, const InterpretationConfig& cfg) {
  state.own_sn += cfg.rreq_sn_increment;
  refresh_optimal_self_entry(state, cfg);

  RreqMessage rreq;
  rreq.rreq_id = state.next_rreq_id++;
  rreq.originator = state.self;
  rreq.originator_sn = state.own_sn;
  rreq.destination = dest;
  if (const auto* entry = state.table.find(dest)) {
    rreq.dest_sn = entry->dsn;
    rreq.dest_sn_unknown = false;
  } else {
    rreq.dest_sn = 0;
    rreq.dest_sn_unknown = true;
  }
  rreq.hop_count = 0;

  state.buffered.insert(std::upper_bound(state.buffered.begin(), state.buffered.end(), dest), dest);
  return {std::move(state), rreq};
}

RoutingTableEntry update_previous_hop(const std::optional<RoutingTableEntry>& entry, NodeId prev,
                                      const InterpretationConfig& cfg) {
  if (!entry) {
    return RoutingTableEntry{prev, 0, SnStatus::unknown, Validity::valid, 1, prev, {}};
  }
  switch (cfg.previous_hop) {
    case PreviousHopRule::no_update:
      return *entry;
    case PreviousHopRule::overwrite:
      return RoutingTableEntry{prev, 0, SnStatus::unknown, Validity::valid, 1, prev, entry->precursors};
    case PreviousHopRule::keep_seq_num:
      return RoutingTableEntry{prev, entry->dsn, entry->sn_status, Validity::valid, 1, prev, entry->precursors};
  }
  return *entry;
}

RoutingTableEntry update_reverse_route(const std::optional<RoutingTableEntry>& entry, const RreqMessage& rreq,
                                       NodeId prev) {
  if (entry && entry->sn_status == SnStatus::known && !is_fresher(rreq.originator_sn, rreq.hop_count, *entry)) {
    return *entry;
  }
  NodeSet precursors = entry ? entry->precursors : NodeSet{};
  return RoutingTableEntry{rreq.originator, rreq.originator_sn, SnStatus::known, Validity::valid, rreq.hop_count,
                           prev, precursors};
}

std::optional<RoutingTableEntry> update_forward_route(const std::optional<RoutingTableEntry>& entry,
                                                      const RrepMessage& rrep, NodeId prev,
                                                      const InterpretationConfig& cfg) {
  bool take = false;
  if (!entry) {
    take = true;
  } else if (entry->sn_status == SnStatus::unknown) {
    take = cfg.unknown_sn == UnknownSnRule::copy_from_reply || rrep.dest_sn >= entry->dsn;
  } else {
    take = is_fresher(rrep.dest_sn, rrep.hop_count, *entry);
  }
  if (!take) return std::nullopt;
  NodeSet precursors = entry ? entry->precursors : NodeSet{};
  return RoutingTableEntry{rrep.destination, rrep.dest_sn, SnStatus::known, Validity::valid, rrep.hop_count, prev,
                           precursors};
}

HandlerOutcome handle_rreq(NodeState state, RreqMessage rreq, NodeId prev, const InterpretationConfig& cfg) {
  HandlerOutcome out;
  apply_previous_hop(state, prev, cfg);

  const RreqKey key{rreq.originator, rreq.rreq_id};
  if (rreq.originator == state.self || state.has_seen(key)) {
    out.state = std::move(state);
    return out;
  }
  state.remember(key);
  ++rreq.hop_count;
  state.table.upsert(update_reverse_route(state.table.lookup(rreq.originator), rreq, prev));

  if (rreq.destination == state.self) {
    state.own_sn = std::max(state.own_sn, rreq.dest_sn);
    refresh_optimal_self_entry(state, cfg);
    out.emissions.emplace_back(UnicastRrep{prev, RrepMessage{rreq.originator, state.self, state.own_sn, 0}});
    out.state = std::move(state);
    return out;
  }

  auto* forward = state.table.find_mutable(rreq.destination);
  const bool can_reply = forward != nullptr && forward->is_valid() && forward->sn_status == SnStatus::known &&
                         (rreq.dest_sn_unknown || forward->dsn >= rreq.dest_sn);
  if (can_reply) {
    const auto* reverse = state.table.find(rreq.originator);
    if (reverse == nullptr || !reverse->is_valid()) {
      out.anomaly = Anomaly::no_reverse_route;
    } else {
      const NodeId toward_originator = reverse->next_hop;
      out.emissions.emplace_back(UnicastRrep{
          toward_originator, RrepMessage{rreq.originator, rreq.destination, forward->dsn, forward->hop_count}});
      forward->precursors.insert(toward_originator);
    }
  } else {
    out.emissions.emplace_back(BroadcastRreq{rreq});
  }
  out.state = std::move(state);
  return out;
}

HandlerOutcome handle_rrep(NodeState state, RrepMessage rrep, NodeId prev, const InterpretationConfig& cfg) {
  HandlerOutcome out;
  apply_previous_hop(state, prev, cfg);
  ++rrep.hop_count;

  if (rrep.destination == state.self) {
    switch (cfg.self_entry) {
      case SelfEntryRule::allow_any:
        if (auto updated = update_forward_route(state.table.lookup(state.self), rrep, prev, cfg)) {
          state.table.upsert(*updated);
        }
        break;
      case SelfEntryRule::optimal_only:
        refresh_optimal_self_entry(state, cfg);
        break;
      case SelfEntryRule::discard_reply:
        out.state = std::move(state);
        return out;
      case SelfEntryRule::forward_reply:
        break;
    }
  } else if (auto updated = update_forward_route(state.table.lookup(rrep.destination), rrep, prev, cfg)) {
    state.table.upsert(*updated);
  }

  if (rrep.originator == state.self) {
    auto [first, last] = std::equal_range(state.buffered.begin(), state.buffered.end(), rrep.destination);
    state.buffered.erase(first, last);
    out.state = std::move(state);
    return out;
  }

  const auto* reverse = state.table.find(rrep.originator);
  if (reverse == nullptr || !reverse->is_valid()) {
    out.anomaly = Anomaly::no_reverse_route;
    out.state = std::move(state);
    return out;
  }
  const NodeId toward_originator = reverse->next_hop;
  out.emissions.emplace_back(UnicastRrep{toward_originator, rrep});
  if (auto* forward = state.table.find_mutable(rrep.destination)) forward->precursors.insert(toward_originator);
  out.state = std::move(state);
  return out;
}

InvalidationOutcome detect_link_break(NodeState state, NodeId broken_neighbor) {
  InvalidationOutcome out;
  RerrMessage rerr;
  for (auto& entry : state.table.mutable_entries()) {
    if (!entry.is_valid() || entry.next_hop != broken_neighbor) continue;
    ++entry.dsn;
    entry.validity = Validity::invalid;
    rerr.unreachable.push_back({entry.destination, entry.dsn});
    out.recipients |= entry.precursors;
    entry.precursors.clear();
  }
  if (!rerr.unreachable.empty()) out.rerr = std::move(rerr);
  out.state = std::move(state);
  return out;
}

InvalidationOutcome handle_rerr(NodeState state, const RerrMessage& rerr, NodeId prev,
                                const InterpretationConfig& cfg) {
  InvalidationOutcome out;
  RerrMessage forwarded;
  for (const auto& [dest, reported] : rerr.unreachable) {
    auto* entry = state.table.find_mutable(dest);
    if (entry == nullptr || !entry->is_valid() || entry->next_hop != prev) continue;

    std::optional<SequenceNumber> next_dsn;
    switch (cfg.rerr) {
      case RerrRule::copy:
        next_dsn = reported;
        break;
      case RerrRule::if_not_fresher:
        if (entry->dsn <= reported) next_dsn = reported;
        break;
      case RerrRule::max:
        next_dsn = std::max(entry->dsn, reported);
        break;
      case RerrRule::max_incremented:
        next_dsn = std::max(entry->dsn + 1, reported);
        break;
      case RerrRule::if_strictly_staler:
        if (entry->dsn < reported) next_dsn = reported;
        break;
    }
    if (!next_dsn) continue;

    entry->dsn = *next_dsn;
    entry->validity = Validity::invalid;
    forwarded.unreachable.push_back({dest, entry->dsn});
    out.recipients |= entry->precursors;
    entry->precursors.clear();
  }
  if (!forwarded.unreachable.empty()) out.rerr = std::move(forwarded);
  out.state = std::move(state);
  return out;
}

}  // namespace aodv
