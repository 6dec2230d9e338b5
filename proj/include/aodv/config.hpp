#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace aodv {

// Each enum is one axis along which RFC 3561 admits several readings. The
// comment after each enumerator is the conventional label of that reading
// ("1a", "4e", ...), which is also what the CLI and scenario files accept.

/// How a RREP updates an entry whose sequence number is marked unknown.
enum class UnknownSnRule : std::uint8_t {
  copy_from_reply,  // 1a
  reject_stale,     // 1b
};

/// How a control message refreshes the entry for the neighbour that sent it.
enum class PreviousHopRule : std::uint8_t {
  no_update,     // 2a
  overwrite,     // 2b
  keep_seq_num,  // 2c
};

/// Treatment of routing-table entries whose destination is the node itself.
enum class SelfEntryRule : std::uint8_t {
  allow_any,      // 3a
  optimal_only,   // 3b
  discard_reply,  // 3c
  forward_reply,  // 3d
};

/// How a RERR invalidates a route that goes through its sender.
enum class RerrRule : std::uint8_t {
  copy,                 // 4a
  if_not_fresher,       // 4b
  max,                  // 4c
  max_incremented,      // 4d
  if_strictly_staler,   // 4e
};

struct InterpretationConfig {
  UnknownSnRule unknown_sn = UnknownSnRule::reject_stale;
  PreviousHopRule previous_hop = PreviousHopRule::keep_seq_num;
  SelfEntryRule self_entry = SelfEntryRule::allow_any;
  RerrRule rerr = RerrRule::if_not_fresher;
  std::uint32_t rreq_sn_increment = 1;

  friend bool operator==(const InterpretationConfig&, const InterpretationConfig&) = default;
};

std::string_view label(UnknownSnRule r);
std::string_view label(PreviousHopRule r);
std::string_view label(SelfEntryRule r);
std::string_view label(RerrRule r);

std::optional<UnknownSnRule> parse_unknown_sn_rule(std::string_view text);
std::optional<PreviousHopRule> parse_previous_hop_rule(std::string_view text);
std::optional<SelfEntryRule> parse_self_entry_rule(std::string_view text);
std::optional<RerrRule> parse_rerr_rule(std::string_view text);

/// "1b,2c,3a,4b,incr1"
std::string to_string(const InterpretationConfig& cfg);

/// Accepts the to_string form; the trailing increment field is optional.
std::optional<InterpretationConfig> parse_config(std::string_view text);

struct Preset {
  std::string_view name;
  InterpretationConfig config;
  std::string_view description;
};

std::span<const Preset> presets();
std::optional<InterpretationConfig> find_preset(std::string_view name);

}  // namespace aodv
