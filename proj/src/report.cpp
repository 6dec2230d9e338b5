#include "aodv/report.hpp"

#include <sstream>

#include "aodv/format.hpp"

namespace aodv {
namespace {

using nlohmann::json;

json nodes_json(const Topology& topo, const std::vector<NodeId>& nodes) {
  json out = json::array();
  for (NodeId n : nodes) out.push_back(topo.name(n));
  return out;
}

json loop_json(const Topology& topo, const LoopReport& loop) {
  return {{"destination", topo.name(loop.destination)}, {"cycle", nodes_json(topo, loop.cycle)}};
}

json events_json(const Topology& topo, const std::vector<Event>& events) {
  json out = json::array();
  for (const auto& e : events) out.push_back(format_event(topo, e));
  return out;
}

std::string_view bounds_links(InitialLinks l) {
  switch (l) {
    case InitialLinks::none: return "none";
    case InitialLinks::line: return "line";
    case InitialLinks::complete: return "complete";
  }
  return "?";
}

}  // namespace

json entry_json(const Topology& topo, const RoutingTableEntry& e) {
  return {{"destination", topo.name(e.destination)},
          {"dsn", e.dsn},
          {"sn_status", e.sn_status == SnStatus::known ? "known" : "unknown"},
          {"validity", e.is_valid() ? "valid" : "invalid"},
          {"hop_count", e.hop_count},
          {"next_hop", topo.name(e.next_hop)},
          {"precursors", nodes_json(topo, e.precursors.members())}};
}

json tables_json(const GlobalState& g) {
  json out = json::array();
  for (const auto& n : g.nodes) {
    json entries = json::array();
    for (const auto& e : n.table) entries.push_back(entry_json(g.topology, e));
    out.push_back({{"node", g.topology.name(n.self)}, {"own_sn", n.own_sn}, {"entries", std::move(entries)}});
  }
  return out;
}

json trace_json(const GlobalState& g) {
  json out = json::array();
  for (const auto& step : g.trace) out.push_back(format_step(g.topology, step));
  return out;
}

json run_report_json(const Scenario& s, const InterpretationConfig& cfg, const RunResult& r) {
  const auto& g = r.final_state;
  json assertions = json::array();
  for (const auto& a : r.assertions) {
    assertions.push_back({{"line", a.line}, {"expected", a.expected}, {"actual", a.actual}, {"passed", a.passed}});
  }
  json loops = json::array();
  for (const auto& l : check_loop_freedom(g)) loops.push_back(loop_json(g.topology, l));
  json decrements = json::array();
  for (const auto& v : check_monotonicity(g.trace)) {
    decrements.push_back({{"node", g.topology.name(v.node)},
                          {"destination", g.topology.name(v.destination)},
                          {"step", v.step_index},
                          {"before", v.before},
                          {"after", v.after}});
  }
  return {{"scenario", s.name},
          {"config", to_string(cfg)},
          {"passed", r.all_passed()},
          {"assertions", std::move(assertions)},
          {"loops", std::move(loops)},
          {"monotonicity_violations", std::move(decrements)},
          {"self_entry_nodes", nodes_json(g.topology, check_self_entries(g, cfg))},
          {"tables", tables_json(g)}};
}

std::string run_report_text(const Scenario& s, const InterpretationConfig& cfg, const RunResult& r) {
  const auto& g = r.final_state;
  std::ostringstream os;
  os << "scenario: " << (s.name.empty() ? "(unnamed)" : s.name) << "\nconfig: " << to_string(cfg) << "\n\n";
  os << format_tables(g) << '\n';
  auto loops = check_loop_freedom(g);
  if (loops.empty()) {
    os << "loops: none\n";
  } else {
    for (const auto& l : loops) os << format_loop(g.topology, l) << '\n';
  }
  auto decrements = check_monotonicity(g.trace);
  os << "sequence-number decrements: " << decrements.size() << '\n';
  for (const auto& v : decrements) {
    os << "  step " << v.step_index << ": " << g.topology.name(v.node) << " entry for "
       << g.topology.name(v.destination) << ' ' << v.before << " -> " << v.after << '\n';
  }
  if (!r.assertions.empty()) os << '\n';
  for (const auto& a : r.assertions) {
    os << (a.passed ? "PASS" : "FAIL") << " line " << a.line << ": " << a.expected;
    if (!a.passed) os << " (actual: " << a.actual << ')';
    os << '\n';
  }
  return os.str();
}

json explore_report_json(const InterpretationConfig& cfg, const ExploreBounds& bounds, const ExploreResult& r) {
  json loops = json::array();
  for (const auto& w : r.loops) {
    loops.push_back({{"loop", loop_json(r.initial, w.loop)}, {"witness", events_json(r.initial, w.events)}});
  }
  json decrements = json::array();
  for (const auto& w : r.decrements) {
    decrements.push_back({{"node", r.initial.name(w.violation.node)},
                          {"destination", r.initial.name(w.violation.destination)},
                          {"before", w.violation.before},
                          {"after", w.violation.after},
                          {"witness", events_json(r.initial, w.events)}});
  }
  return {{"config", to_string(cfg)},
          {"bounds",
           {{"nodes", bounds.node_count},
            {"max_events", bounds.max_events},
            {"max_link_changes", bounds.max_link_changes},
            {"max_route_requests", bounds.max_route_requests},
            {"max_states", bounds.max_states},
            {"initial_links", bounds_links(bounds.initial_links)}}},
          {"states_visited", r.states_visited},
          {"transitions", r.transitions},
          {"exhausted", r.exhausted},
          {"loops", std::move(loops)},
          {"monotonicity_violations", r.monotonicity_violations},
          {"decrements", std::move(decrements)}};
}

std::string explore_report_text(const InterpretationConfig& cfg, const ExploreBounds& bounds,
                                const ExploreResult& r) {
  std::ostringstream os;
  os << "config: " << to_string(cfg) << "\nbounds: nodes=" << bounds.node_count << " max-events=" << bounds.max_events
     << " max-link-changes=" << bounds.max_link_changes << " max-route-requests=" << bounds.max_route_requests
     << " initial-links=" << bounds_links(bounds.initial_links) << '\n';
  os << "states visited: " << r.states_visited << "\ntransitions: " << r.transitions
     << "\nexhausted: " << (r.exhausted ? "yes" : "no") << "\nloops: " << r.loops.size()
     << "\nsequence-number decrements: " << r.monotonicity_violations << '\n';
  for (const auto& w : r.loops) {
    os << "\n" << format_loop(r.initial, w.loop) << " (" << w.events.size() << " events)\n";
    for (const auto& e : w.events) os << "  " << format_event(r.initial, e) << '\n';
  }
  for (const auto& w : r.decrements) {
    os << "\ndecrement at " << r.initial.name(w.violation.node) << " for "
       << r.initial.name(w.violation.destination) << ": " << w.violation.before << " -> " << w.violation.after
       << " (" << w.events.size() << " events)\n";
    for (const auto& e : w.events) os << "  " << format_event(r.initial, e) << '\n';
  }
  return os.str();
}

std::string trace_text(const GlobalState& g) {
  std::string out;
  for (const auto& step : g.trace) {
    out += format_step(g.topology, step);
    out += '\n';
  }
  return out;
}

}  // namespace aodv
