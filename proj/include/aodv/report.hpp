#pragma once

#include <string>

#include <json.hpp>

#include "aodv/explorer.hpp"
#include "aodv/scenario.hpp"

namespace aodv {

nlohmann::json entry_json(const Topology& topo, const RoutingTableEntry& e);
nlohmann::json tables_json(const GlobalState& g);
nlohmann::json trace_json(const GlobalState& g);

nlohmann::json run_report_json(const Scenario& s, const InterpretationConfig& cfg, const RunResult& r);
std::string run_report_text(const Scenario& s, const InterpretationConfig& cfg, const RunResult& r);

nlohmann::json explore_report_json(const InterpretationConfig& cfg, const ExploreBounds& bounds,
                                   const ExploreResult& r);
std::string explore_report_text(const InterpretationConfig& cfg, const ExploreBounds& bounds,
                                const ExploreResult& r);

std::string trace_text(const GlobalState& g);

}  // namespace aodv
