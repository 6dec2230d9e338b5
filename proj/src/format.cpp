#include "aodv/format.hpp"

#include <sstream>

namespace aodv {
namespace {

std::string join_nodes(const Topology& topo, const std::vector<NodeId>& nodes, char sep) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i != 0) out += sep;
    out += topo.name(nodes[i]);
  }
  return out;
}

std::string_view step_label(StepKind k) {
  switch (k) {
    case StepKind::link_up: return "link-up";
    case StepKind::link_down: return "link-down";
    case StepKind::originate: return "originate";
    case StepKind::forward_data: return "forward-data";
    case StepKind::deliver: return "deliver";
    case StepKind::link_break: return "link-break";
    case StepKind::send_dropped: return "send-dropped";
  }
  return "?";
}

}  // namespace

std::string format_entry(const Topology& topo, const RoutingTableEntry& e) {
  std::ostringstream os;
  os << '(' << topo.name(e.destination) << ',' << e.dsn << ','
     << (e.sn_status == SnStatus::known ? "known" : "unknown") << ',' << (e.is_valid() ? "val" : "inval") << ','
     << e.hop_count << ',' << topo.name(e.next_hop) << ')';
  return os.str();
}

std::string format_message(const Topology& topo, const ControlMessage& msg) {
  std::ostringstream os;
  if (const auto* rreq = std::get_if<RreqMessage>(&msg)) {
    os << "RREQ(" << topo.name(rreq->originator) << ',' << topo.name(rreq->destination) << ") id=" << rreq->rreq_id
       << " osn=" << rreq->originator_sn << " dsn=";
    if (rreq->dest_sn_unknown) {
      os << "unknown";
    } else {
      os << rreq->dest_sn;
    }
    os << " hops=" << rreq->hop_count;
  } else if (const auto* rrep = std::get_if<RrepMessage>(&msg)) {
    os << "RREP(" << topo.name(rrep->originator) << ',' << topo.name(rrep->destination) << ") dsn=" << rrep->dest_sn
       << " hops=" << rrep->hop_count;
  } else {
    os << "RERR[";
    const auto& rerr = std::get<RerrMessage>(msg);
    for (std::size_t i = 0; i < rerr.unreachable.size(); ++i) {
      if (i != 0) os << ' ';
      os << '(' << topo.name(rerr.unreachable[i].destination) << ',' << rerr.unreachable[i].dsn << ')';
    }
    os << ']';
  }
  return os.str();
}

std::string format_event(const Topology& topo, const Event& e) {
  switch (e.kind) {
    case EventKind::link_up: return "link " + topo.name(e.first) + ' ' + topo.name(e.second);
    case EventKind::link_down: return "unlink " + topo.name(e.first) + ' ' + topo.name(e.second);
    case EventKind::new_packet: return "newpkt " + topo.name(e.first) + ' ' + topo.name(e.second);
    case EventKind::deliver_next: return "deliver " + topo.name(e.first);
    case EventKind::deliver_all: return "deliver-all";
  }
  return {};
}

std::string format_loop(const Topology& topo, const LoopReport& loop) {
  return "loop for " + topo.name(loop.destination) + ": " + join_nodes(topo, loop.cycle, ' ') + " -> " +
         topo.name(loop.cycle.front());
}

std::string format_step(const Topology& topo, const TraceStep& step) {
  std::ostringstream os;
  os << '[' << step.event_index << "] " << step_label(step.kind) << ' ' << topo.name(step.node);
  if (step.kind != StepKind::forward_data && step.kind != StepKind::originate) {
    os << (step.kind == StepKind::deliver ? " <- " : " / ");
  } else {
    os << " -> ";
  }
  os << topo.name(step.peer);
  if (step.message) os << ' ' << format_message(topo, *step.message);
  if (step.anomaly) os << " [anomaly: no reverse route]";
  for (const auto& c : step.changes) {
    os << "\n    " << topo.name(c.node) << ": " << (c.before ? format_entry(topo, *c.before) : std::string("-"))
       << " => " << format_entry(topo, c.after);
  }
  return os.str();
}

std::string format_tables(const GlobalState& g) {
  std::ostringstream os;
  for (const auto& node : g.nodes) {
    os << g.topology.name(node.self) << " (own sn " << node.own_sn << ")\n";
    for (const auto& e : node.table) {
      os << "  " << format_entry(g.topology, e);
      if (!e.precursors.empty()) os << " precursors {" << join_nodes(g.topology, e.precursors.members(), ',') << '}';
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace aodv
