#include "aodv/explorer.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <limits>
#include <map>
#include <unordered_set>

namespace aodv {
namespace {

constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

// 128-bit fingerprint of the canonical byte encoding of a search state.
struct Fingerprint {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

struct FingerprintHash {
  std::size_t operator()(const Fingerprint& f) const { return static_cast<std::size_t>(f.lo ^ (f.hi * 0x9e3779b97f4a7c15ULL)); }
};

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Two independently seeded word-wise mixes give the two halves.
Fingerprint fingerprint(const std::string& bytes) {
  std::uint64_t lo = 0xcbf29ce484222325ULL ^ bytes.size();
  std::uint64_t hi = 0x243f6a8885a308d3ULL ^ (bytes.size() << 32);
  const std::size_t words = bytes.size() / 8;
  for (std::size_t i = 0; i <= words; ++i) {
    std::uint64_t word = 0;
    const std::size_t take = i < words ? 8 : bytes.size() % 8;
    std::memcpy(&word, bytes.data() + i * 8, take);
    lo = mix64(lo ^ word) * 0x9e3779b97f4a7c15ULL;
    hi = mix64(hi + word + 0x632be59bd9b4e019ULL) ^ (hi >> 29);
  }
  return {mix64(lo), mix64(hi ^ lo)};
}

class Encoder {
 public:
  void u8(std::uint64_t v) { bytes_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int k = 0; k < 4; ++k) bytes_.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
  }
  void set(NodeSet s) {
    for (int k = 0; k < 8; ++k) bytes_.push_back(static_cast<char>((s.bits() >> (8 * k)) & 0xff));
  }

  void message(const ControlMessage& msg) {
    u8(msg.index());
    if (const auto* q = std::get_if<RreqMessage>(&msg)) {
      u32(q->rreq_id);
      u8(q->originator.value);
      u32(q->originator_sn);
      u8(q->destination.value);
      u32(q->dest_sn);
      u8(q->dest_sn_unknown);
      u32(q->hop_count);
    } else if (const auto* p = std::get_if<RrepMessage>(&msg)) {
      u8(p->originator.value);
      u8(p->destination.value);
      u32(p->dest_sn);
      u32(p->hop_count);
    } else {
      const auto& r = std::get<RerrMessage>(msg);
      u8(r.unreachable.size());
      for (const auto& u : r.unreachable) {
        u8(u.destination.value);
        u32(u.dsn);
      }
    }
  }

  const std::string& encode(const GlobalState& g, std::size_t link_changes, std::size_t packets) {
    bytes_.clear();
    u8(link_changes);
    u8(packets);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const auto& n = g.nodes[i];
      set(g.topology.neighbors(n.self));
      u32(n.own_sn);
      u32(n.next_rreq_id);
      u8(n.table.size());
      for (const auto& e : n.table) {
        u8(e.destination.value);
        u32(e.dsn);
        u8(static_cast<std::uint8_t>(e.sn_status));
        u8(static_cast<std::uint8_t>(e.validity));
        u32(e.hop_count);
        u8(e.next_hop.value);
        set(e.precursors);
      }
      u8(n.rreq_seen.size());
      for (const auto& k : n.rreq_seen) {
        u8(k.originator.value);
        u32(k.rreq_id);
      }
      u8(n.buffered.size());
      for (NodeId b : n.buffered) u8(b.value);
      const auto& queue = g.inflight[i];
      u8(queue.size());
      for (const auto& q : queue) {
        u8(q.sender.value);
        message(q.message);
      }
    }
    return bytes_;
  }

 private:
  std::string bytes_;
};

// Inverse of Encoder::encode. Node names come from `blank`, a copy of the
// initial topology with every link removed.
class Decoder {
 public:
  Decoder(std::string_view bytes, const Topology& blank) : bytes_(bytes), blank_(blank) {}

  GlobalState decode(std::uint8_t& link_changes, std::uint8_t& packets) {
    GlobalState g;
    g.topology = blank_;
    link_changes = u8();
    packets = u8();
    const std::size_t n = blank_.size();
    g.nodes.resize(n);
    g.inflight.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto& node = g.nodes[i];
      node.self = NodeId{static_cast<std::uint8_t>(i)};
      for (NodeId peer : set().members()) {
        if (node.self < peer) g.topology.link(node.self, peer);
      }
      node.own_sn = u32();
      node.next_rreq_id = u32();
      for (std::size_t k = u8(); k > 0; --k) {
        RoutingTableEntry e;
        e.destination = NodeId{u8()};
        e.dsn = u32();
        e.sn_status = static_cast<SnStatus>(u8());
        e.validity = static_cast<Validity>(u8());
        e.hop_count = u32();
        e.next_hop = NodeId{u8()};
        e.precursors = set();
        node.table.upsert(e);
      }
      for (std::size_t k = u8(); k > 0; --k) {
        RreqKey key;
        key.originator = NodeId{u8()};
        key.rreq_id = u32();
        node.rreq_seen.push_back(key);
      }
      for (std::size_t k = u8(); k > 0; --k) node.buffered.push_back(NodeId{u8()});
      for (std::size_t k = u8(); k > 0; --k) {
        QueuedMessage q;
        q.sender = NodeId{u8()};
        q.message = message();
        g.inflight[i].push_back(std::move(q));
      }
    }
    return g;
  }

 private:
  std::uint8_t u8() { return static_cast<std::uint8_t>(bytes_[pos_++]); }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(u8()) << (8 * k);
    return v;
  }
  NodeSet set() {
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(u8()) << (8 * k);
    return NodeSet::from_bits(v);
  }

  ControlMessage message() {
    switch (u8()) {
      case 0: {
        RreqMessage q;
        q.rreq_id = u32();
        q.originator = NodeId{u8()};
        q.originator_sn = u32();
        q.destination = NodeId{u8()};
        q.dest_sn = u32();
        q.dest_sn_unknown = u8() != 0;
        q.hop_count = u32();
        return q;
      }
      case 1: {
        RrepMessage p;
        p.originator = NodeId{u8()};
        p.destination = NodeId{u8()};
        p.dest_sn = u32();
        p.hop_count = u32();
        return p;
      }
      default: {
        RerrMessage r;
        for (std::size_t k = u8(); k > 0; --k) {
          UnreachableDestination u;
          u.destination = NodeId{u8()};
          u.dsn = u32();
          r.unreachable.push_back(u);
        }
        return r;
      }
    }
  }

  std::string_view bytes_;
  const Topology& blank_;
  std::size_t pos_ = 0;
};

// Frontier states are kept in their encoded form; a decoded GlobalState is
// an order of magnitude larger.
struct Frontier {
  std::uint32_t id;
  std::string bytes;
};

struct Visited {
  std::uint32_t parent;
  Event event;
};

void enabled_events(const GlobalState& g, std::size_t link_changes, std::size_t packets, const ExploreBounds& bounds,
                    std::vector<Event>& out) {
  out.clear();
  const std::size_t n = g.nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!g.inflight[i].empty()) out.push_back(Event::deliver_next(NodeId{static_cast<std::uint8_t>(i)}));
  }
  if (packets < bounds.max_route_requests) {
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t d = 0; d < n; ++d) {
        if (s != d) {
          out.push_back(Event::new_packet(NodeId{static_cast<std::uint8_t>(s)}, NodeId{static_cast<std::uint8_t>(d)}));
        }
      }
    }
  }
  if (link_changes < bounds.max_link_changes) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const NodeId na{static_cast<std::uint8_t>(a)};
        const NodeId nb{static_cast<std::uint8_t>(b)};
        out.push_back(g.topology.linked(na, nb) ? Event::link_down(na, nb) : Event::link_up(na, nb));
      }
    }
  }
}

std::vector<Event> path_to(const std::vector<Visited>& visited, std::uint32_t id, std::span<const Event> prefix) {
  std::vector<Event> reversed;
  for (std::uint32_t cur = id; visited[cur].parent != kNoParent; cur = visited[cur].parent) {
    reversed.push_back(visited[cur].event);
  }
  std::vector<Event> out(prefix.begin(), prefix.end());
  out.insert(out.end(), reversed.rbegin(), reversed.rend());
  return out;
}

}  // namespace

void validate_bounds(const ExploreBounds& b) {
  if (b.node_count < 2 || b.node_count > 5) throw std::invalid_argument("node count must be between 2 and 5");
  if (b.max_link_changes > 255 || b.max_route_requests > 255) {
    throw std::invalid_argument("link-change and route-request budgets must be below 256");
  }
  if (b.max_states == 0) throw std::invalid_argument("state store capacity must be positive");
  if (b.max_states >= kNoParent) throw std::invalid_argument("state store capacity too large");
}

Topology explore_topology(const ExploreBounds& bounds) {
  validate_bounds(bounds);
  Topology topo;
  for (std::size_t i = 0; i < bounds.node_count; ++i) topo.add_node("n" + std::to_string(i));
  for (std::size_t a = 0; a < bounds.node_count; ++a) {
    for (std::size_t b = a + 1; b < bounds.node_count; ++b) {
      const bool link = bounds.initial_links == InitialLinks::complete ||
                        (bounds.initial_links == InitialLinks::line && b == a + 1);
      if (link) topo.link(NodeId{static_cast<std::uint8_t>(a)}, NodeId{static_cast<std::uint8_t>(b)});
    }
  }
  return topo;
}

ExploreResult explore(const InterpretationConfig& cfg, const ExploreBounds& bounds, const StateVisitor& visit) {
  const Topology initial = explore_topology(bounds);
  return explore_from(initial, {}, cfg, bounds, visit);
}

ExploreResult explore_from(const Topology& initial, std::span<const Event> prefix, const InterpretationConfig& cfg,
                           const ExploreBounds& bounds, const StateVisitor& visit) {
  validate_bounds(bounds);
  ExploreResult result;
  result.initial = initial;

  GlobalState root = replay_witness(initial, prefix, cfg);
  root.trace.clear();
  root.events_applied = 0;

  Encoder encoder;
  std::unordered_set<Fingerprint, FingerprintHash> seen;
  std::vector<Visited> visited;
  std::map<std::pair<NodeId, NodeId>, bool> decrement_seen;
  std::map<LoopReport, bool> loop_seen;

  auto discover = [&](const GlobalState& s, std::uint32_t id) {
    if (visit) visit(s);
    for (auto& loop : check_loop_freedom(s)) {
      if (loop_seen.emplace(loop, true).second) {
        result.loops.push_back({std::move(loop), path_to(visited, id, prefix)});
      }
    }
  };

  Topology blank = initial;
  for (auto [a, b] : initial.links()) blank.unlink(a, b);

  const std::string& root_bytes = encoder.encode(root, 0, 0);
  seen.insert(fingerprint(root_bytes));
  visited.push_back({kNoParent, Event{}});
  discover(root, 0);

  std::vector<Frontier> frontier;
  frontier.push_back({0, root_bytes});
  std::vector<Event> events;

  for (std::size_t depth = 0; depth < bounds.max_events && !frontier.empty(); ++depth) {
    std::vector<Frontier> next;
    for (auto& f : frontier) {
      std::uint8_t link_changes = 0;
      std::uint8_t packets = 0;
      const GlobalState parent = Decoder(f.bytes, blank).decode(link_changes, packets);
      std::string().swap(f.bytes);
      enabled_events(parent, link_changes, packets, bounds, events);
      for (const Event& e : events) {
        GlobalState child = parent;
        if (apply_event(child, e, cfg) == StepResult::no_op) continue;
        ++result.transitions;
        std::uint8_t child_links = link_changes;
        std::uint8_t child_packets = packets;
        if (e.kind == EventKind::link_up || e.kind == EventKind::link_down) ++child_links;
        if (e.kind == EventKind::new_packet) ++child_packets;

        for (auto& v : check_monotonicity(child.trace)) {
          ++result.monotonicity_violations;
          if (decrement_seen.emplace(std::pair{v.node, v.destination}, true).second) {
            auto path = path_to(visited, f.id, prefix);
            path.push_back(e);
            result.decrements.push_back({v, std::move(path)});
          }
        }
        child.trace.clear();
        child.events_applied = 0;

        const std::string& bytes = encoder.encode(child, child_links, child_packets);
        if (!seen.insert(fingerprint(bytes)).second) continue;
        if (visited.size() >= bounds.max_states) {
          result.states_visited = visited.size();
          result.exhausted = false;
          return result;
        }
        const auto id = static_cast<std::uint32_t>(visited.size());
        visited.push_back({f.id, e});
        discover(child, id);
        next.push_back({id, bytes});
      }
    }
    frontier = std::move(next);
  }

  result.states_visited = visited.size();
  result.exhausted = true;
  return result;
}

GlobalState replay_witness(const Topology& initial, std::span<const Event> events, const InterpretationConfig& cfg) {
  GlobalState g = make_network(initial, cfg);
  for (std::size_t i = 0; i < events.size(); ++i) {
    try {
      apply_event(g, events[i], cfg);
    } catch (const EventError& err) {
      throw WitnessError(i, err.what());
    }
  }
  return g;
}

Scenario witness_scenario(const Topology& initial, const LoopWitness& w, const InterpretationConfig& cfg,
                          const std::string& name) {
  Scenario s;
  s.name = name;
  s.initial = initial;
  s.config = cfg;
  for (const auto& e : w.events) s.items.push_back({e, 0});
  s.items.push_back({Assertion{LoopAssertion{w.loop}}, 0});
  return s;
}

}  // namespace aodv
