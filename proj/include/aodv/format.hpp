#pragma once

#include <string>

#include "aodv/checker.hpp"
#include "aodv/netsim.hpp"

namespace aodv {

/// Tuple form "(d,3,known,inval,1,d)": destination, sequence number, status,
/// validity, hop count, next hop.
std::string format_entry(const Topology& topo, const RoutingTableEntry& e);

std::string format_message(const Topology& topo, const ControlMessage& msg);

/// One scenario directive, e.g. "newpkt s d" or "deliver-all".
std::string format_event(const Topology& topo, const Event& e);

std::string format_loop(const Topology& topo, const LoopReport& loop);

std::string format_step(const Topology& topo, const TraceStep& step);

/// Every node's own sequence number and routing table, one entry per line.
std::string format_tables(const GlobalState& g);

}  // namespace aodv
