#include "aodv/checker.hpp"

#include <algorithm>
#include <optional>

namespace aodv {

std::vector<LoopReport> check_loop_freedom(const GlobalState& g) {
  std::vector<LoopReport> reports;
  const std::size_t n = g.nodes.size();
  std::vector<std::optional<NodeId>> next(n);
  std::vector<std::uint8_t> color(n);  // 0 unvisited, 1 on current walk, 2 done
  std::vector<NodeId> walk;

  for (std::size_t d = 0; d < n; ++d) {
    const NodeId dest{static_cast<std::uint8_t>(d)};
    for (std::size_t i = 0; i < n; ++i) {
      next[i].reset();
      if (i == d) continue;
      const auto* e = g.nodes[i].table.find(dest);
      if (e != nullptr && e->is_valid() && e->next_hop.value != i && e->next_hop.value < n) next[i] = e->next_hop;
    }

    // Out-degree is at most one, so each walk either dies out, joins an
    // already-finished walk, or closes a new cycle on itself.
    std::fill(color.begin(), color.end(), 0);
    for (std::size_t start = 0; start < n; ++start) {
      if (color[start] != 0) continue;
      walk.clear();
      std::optional<NodeId> cur = NodeId{static_cast<std::uint8_t>(start)};
      while (cur && color[cur->value] == 0) {
        color[cur->value] = 1;
        walk.push_back(*cur);
        cur = next[cur->value];
      }
      if (cur && color[cur->value] == 1) {
        auto first = std::find(walk.begin(), walk.end(), *cur);
        std::vector<NodeId> cycle(first, walk.end());
        std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
        reports.push_back({dest, std::move(cycle)});
      }
      for (NodeId v : walk) color[v.value] = 2;
    }
  }
  std::sort(reports.begin(), reports.end());
  return reports;
}

std::vector<MonotonicityViolation> check_monotonicity(const Trace& trace) {
  std::vector<MonotonicityViolation> out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    for (const auto& change : trace[i].changes) {
      if (change.before && change.after.dsn < change.before->dsn) {
        out.push_back({change.node, change.after.destination, i, change.before->dsn, change.after.dsn});
      }
    }
  }
  return out;
}

std::vector<NodeId> check_self_entries(const GlobalState& g, const InterpretationConfig& cfg) {
  std::vector<NodeId> out;
  for (const auto& node : g.nodes) {
    const auto* self_entry = node.table.find(node.self);
    switch (cfg.self_entry) {
      case SelfEntryRule::optimal_only: {
        const bool optimal = self_entry != nullptr && self_entry->dsn == node.own_sn &&
                             self_entry->sn_status == SnStatus::known && self_entry->is_valid() &&
                             self_entry->hop_count == 0 && self_entry->next_hop == node.self;
        if (!optimal) out.push_back(node.self);
        break;
      }
      case SelfEntryRule::allow_any:
      case SelfEntryRule::discard_reply:
      case SelfEntryRule::forward_reply:
        if (self_entry != nullptr) out.push_back(node.self);
        break;
    }
  }
  return out;
}

}  // namespace aodv
