#include "aodv/config.hpp"

#include <array>
#include <vector>

namespace aodv {
namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> parse_label(std::string_view text, const std::array<std::string_view, N>& labels) {
  for (std::size_t i = 0; i < N; ++i) {
    if (text == labels[i]) return static_cast<Enum>(i);
  }
  return std::nullopt;
}

constexpr std::array<std::string_view, 2> kAmb1 = {"1a", "1b"};
constexpr std::array<std::string_view, 3> kAmb2 = {"2a", "2b", "2c"};
constexpr std::array<std::string_view, 4> kAmb3 = {"3a", "3b", "3c", "3d"};
constexpr std::array<std::string_view, 5> kAmb4 = {"4a", "4b", "4c", "4d", "4e"};

constexpr InterpretationConfig make(UnknownSnRule a1, PreviousHopRule a2, SelfEntryRule a3, RerrRule a4,
                                    std::uint32_t incr) {
  return InterpretationConfig{a1, a2, a3, a4, incr};
}

// Amb1 is 1b for every implementation profile: none of them uses the
// sequence-number-status flag, so 1a never arises there.
constexpr std::array<Preset, 7> kPresets = {{
    {"aodv-uu",
     make(UnknownSnRule::reject_stale, PreviousHopRule::keep_seq_num, SelfEntryRule::discard_reply, RerrRule::copy, 1),
     "AODV-UU: self-entries excluded"},
    {"kernel-aodv",
     make(UnknownSnRule::reject_stale, PreviousHopRule::no_update, SelfEntryRule::optimal_only, RerrRule::copy, 1),
     "Kernel-AODV: optimal self-entries only"},
    {"aodv-uiuc",
     make(UnknownSnRule::reject_stale, PreviousHopRule::overwrite, SelfEntryRule::allow_any, RerrRule::copy, 1),
     "AODV-UIUC: unknown-sn overwrite decrements sequence numbers"},
    {"aodv-ucsb",
     make(UnknownSnRule::reject_stale, PreviousHopRule::overwrite, SelfEntryRule::allow_any, RerrRule::if_not_fresher,
          1),
     "AODV-UCSB: unknown-sn overwrite decrements sequence numbers"},
    {"aodv-ns2",
     make(UnknownSnRule::reject_stale, PreviousHopRule::no_update, SelfEntryRule::allow_any, RerrRule::if_not_fresher,
          2),
     "AODV-ns2: arbitrary self-entries, own sequence number incremented by two"},
    {"rfc-strict-loop",
     make(UnknownSnRule::reject_stale, PreviousHopRule::keep_seq_num, SelfEntryRule::allow_any,
          RerrRule::if_not_fresher, 1),
     "RFC reading with arbitrary self-entries (loop-prone)"},
    {"rfc-strict-safe",
     make(UnknownSnRule::reject_stale, PreviousHopRule::keep_seq_num, SelfEntryRule::discard_reply,
          RerrRule::if_strictly_staler, 1),
     "RFC reading without self-entries, strict RERR gate"},
}};

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    auto pos = text.find(sep);
    parts.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return parts;
}

}  // namespace

std::string_view label(UnknownSnRule r) { return kAmb1[static_cast<std::size_t>(r)]; }
std::string_view label(PreviousHopRule r) { return kAmb2[static_cast<std::size_t>(r)]; }
std::string_view label(SelfEntryRule r) { return kAmb3[static_cast<std::size_t>(r)]; }
std::string_view label(RerrRule r) { return kAmb4[static_cast<std::size_t>(r)]; }

std::optional<UnknownSnRule> parse_unknown_sn_rule(std::string_view text) {
  return parse_label<UnknownSnRule>(text, kAmb1);
}
std::optional<PreviousHopRule> parse_previous_hop_rule(std::string_view text) {
  return parse_label<PreviousHopRule>(text, kAmb2);
}
std::optional<SelfEntryRule> parse_self_entry_rule(std::string_view text) {
  return parse_label<SelfEntryRule>(text, kAmb3);
}
std::optional<RerrRule> parse_rerr_rule(std::string_view text) { return parse_label<RerrRule>(text, kAmb4); }

std::string to_string(const InterpretationConfig& cfg) {
  std::string out;
  out += label(cfg.unknown_sn);
  out += ',';
  out += label(cfg.previous_hop);
  out += ',';
  out += label(cfg.self_entry);
  out += ',';
  out += label(cfg.rerr);
  out += ",incr";
  out += std::to_string(cfg.rreq_sn_increment);
  return out;
}

std::optional<InterpretationConfig> parse_config(std::string_view text) {
  auto parts = split(text, ',');
  if (parts.size() != 4 && parts.size() != 5) return std::nullopt;
  auto a1 = parse_unknown_sn_rule(parts[0]);
  auto a2 = parse_previous_hop_rule(parts[1]);
  auto a3 = parse_self_entry_rule(parts[2]);
  auto a4 = parse_rerr_rule(parts[3]);
  if (!a1 || !a2 || !a3 || !a4) return std::nullopt;
  InterpretationConfig cfg{*a1, *a2, *a3, *a4, 1};
  if (parts.size() == 5) {
    if (parts[4] == "incr1") {
      cfg.rreq_sn_increment = 1;
    } else if (parts[4] == "incr2") {
      cfg.rreq_sn_increment = 2;
    } else {
      return std::nullopt;
    }
  }
  return cfg;
}

std::span<const Preset> presets() { return kPresets; }

std::optional<InterpretationConfig> find_preset(std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return p.config;
  }
  return std::nullopt;
}

}  // namespace aodv
