#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <ranges>
#include <stdexcept>
#include <variant>
#include <vector>

namespace aodv {

/// Index of a node within a network. Names live in the Topology.
struct NodeId {
  std::uint8_t value = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint8_t v) : value(v) {}

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

inline constexpr std::size_t kMaxNodes = 64;

/// Set of nodes, iterated in ascending NodeId order.
class NodeSet {
 public:
  constexpr NodeSet() = default;
  static constexpr NodeSet from_bits(std::uint64_t bits) {
    NodeSet s;
    s.bits_ = bits;
    return s;
  }

  constexpr void insert(NodeId n) { bits_ |= bit(n); }
  constexpr void erase(NodeId n) { bits_ &= ~bit(n); }
  constexpr void clear() { bits_ = 0; }
  [[nodiscard]] constexpr bool contains(NodeId n) const { return (bits_ & bit(n)) != 0; }
  [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }
  [[nodiscard]] constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  [[nodiscard]] constexpr std::uint64_t bits() const { return bits_; }

  constexpr NodeSet& operator|=(NodeSet other) {
    bits_ |= other.bits_;
    return *this;
  }

  [[nodiscard]] std::vector<NodeId> members() const {
    std::vector<NodeId> out;
    out.reserve(size());
    for (auto rest = bits_; rest != 0; rest &= rest - 1) {
      out.emplace_back(static_cast<std::uint8_t>(std::countr_zero(rest)));
    }
    return out;
  }

  friend constexpr bool operator==(NodeSet, NodeSet) = default;

 private:
  static constexpr std::uint64_t bit(NodeId n) { return std::uint64_t{1} << n.value; }

  std::uint64_t bits_ = 0;
};

using SequenceNumber = std::uint32_t;

enum class SnStatus : std::uint8_t { known, unknown };
enum class Validity : std::uint8_t { valid, invalid };

struct RoutingTableEntry {
  NodeId destination;
  SequenceNumber dsn = 0;
  SnStatus sn_status = SnStatus::unknown;
  Validity validity = Validity::valid;
  std::uint32_t hop_count = 0;
  NodeId next_hop;
  NodeSet precursors;

  [[nodiscard]] bool is_valid() const { return validity == Validity::valid; }

  friend bool operator==(const RoutingTableEntry&, const RoutingTableEntry&) = default;
};

/// A node's routing table: at most one entry per destination, kept sorted by
/// destination so iteration order is deterministic.
class RoutingTable {
 public:
  using const_iterator = std::vector<RoutingTableEntry>::const_iterator;

  [[nodiscard]] const RoutingTableEntry* find(NodeId dest) const {
    auto it = lower(dest);
    return (it != entries_.end() && it->destination == dest) ? &*it : nullptr;
  }

  [[nodiscard]] std::optional<RoutingTableEntry> lookup(NodeId dest) const {
    if (const auto* e = find(dest)) return *e;
    return std::nullopt;
  }

  void upsert(const RoutingTableEntry& entry) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), entry.destination,
                               [](const RoutingTableEntry& e, NodeId d) { return e.destination < d; });
    if (it != entries_.end() && it->destination == entry.destination) {
      *it = entry;
    } else {
      entries_.insert(it, entry);
    }
  }

  [[nodiscard]] RoutingTableEntry* find_mutable(NodeId dest) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), dest,
                               [](const RoutingTableEntry& e, NodeId d) { return e.destination < d; });
    return (it != entries_.end() && it->destination == dest) ? &*it : nullptr;
  }

  [[nodiscard]] const_iterator begin() const { return entries_.begin(); }
  [[nodiscard]] const_iterator end() const { return entries_.end(); }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }

  // Entries are never deleted; invalidation goes through find_mutable.
  auto mutable_entries() { return std::ranges::subrange(entries_.begin(), entries_.end()); }

  friend bool operator==(const RoutingTable&, const RoutingTable&) = default;

 private:
  [[nodiscard]] const_iterator lower(NodeId dest) const {
    return std::lower_bound(entries_.begin(), entries_.end(), dest,
                            [](const RoutingTableEntry& e, NodeId d) { return e.destination < d; });
  }

  std::vector<RoutingTableEntry> entries_;
};

struct RreqMessage {
  std::uint32_t rreq_id = 0;
  NodeId originator;
  SequenceNumber originator_sn = 0;
  NodeId destination;
  SequenceNumber dest_sn = 0;
  bool dest_sn_unknown = false;
  std::uint32_t hop_count = 0;

  friend bool operator==(const RreqMessage&, const RreqMessage&) = default;
};

struct RrepMessage {
  NodeId originator;
  NodeId destination;
  SequenceNumber dest_sn = 0;
  std::uint32_t hop_count = 0;

  friend bool operator==(const RrepMessage&, const RrepMessage&) = default;
};

struct UnreachableDestination {
  NodeId destination;
  SequenceNumber dsn = 0;

  friend bool operator==(const UnreachableDestination&, const UnreachableDestination&) = default;
};

struct RerrMessage {
  std::vector<UnreachableDestination> unreachable;  // non-empty, ascending destination

  friend bool operator==(const RerrMessage&, const RerrMessage&) = default;
};

using ControlMessage = std::variant<RreqMessage, RrepMessage, RerrMessage>;

}  // namespace aodv
