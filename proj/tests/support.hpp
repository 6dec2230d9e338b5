#pragma once

#include <optional>
#include <string_view>

#include "aodv/config.hpp"
#include "aodv/netsim.hpp"
#include "aodv/node.hpp"

namespace aodv::test {

inline InterpretationConfig cfg(std::string_view text) {
  auto c = parse_config(text);
  if (!c) c = find_preset(text);
  return c.value();
}

inline RoutingTableEntry entry(NodeId dest, SequenceNumber dsn, SnStatus status, Validity validity,
                               std::uint32_t hops, NodeId next, NodeSet precursors = {}) {
  return {dest, dsn, status, validity, hops, next, precursors};
}

inline RoutingTableEntry known(NodeId dest, SequenceNumber dsn, std::uint32_t hops, NodeId next) {
  return entry(dest, dsn, SnStatus::known, Validity::valid, hops, next);
}

inline NodeSet set_of(std::initializer_list<NodeId> ids) {
  NodeSet s;
  for (NodeId n : ids) s.insert(n);
  return s;
}

inline Topology topology(std::initializer_list<const char*> names) {
  Topology t;
  for (const char* n : names) t.add_node(n);
  return t;
}

}  // namespace aodv::test
