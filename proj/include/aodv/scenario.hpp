#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aodv/checker.hpp"
#include "aodv/config.hpp"
#include "aodv/netsim.hpp"

namespace aodv {

// Scenario files are line oriented; '#' starts a comment.
//
//   scenario <name>
//   config <1x,2x,3x,4x[,incrN]>
//   node <name>...
//   link <a> <b>            initial link, or LinkUp once an event has been seen
//   unlink <a> <b>          LinkDown
//   newpkt <src> <dest>     NewPacket
//   deliver <node>          DeliverNext
//   deliver-all             DeliverAll
//   assert-loop <dest> <n1> <n2>...
//   assert-no-loops
//   assert-entry <node> <dest> <dsn> valid|invalid <hops> <next> [known|unknown]
//   assert-no-entry <node> <dest>
//
// Assertions are checked at the point where they appear.

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct LoopAssertion {
  LoopReport expected;
};
struct NoLoopsAssertion {};
struct EntryAssertion {
  NodeId node;
  NodeId destination;
  SequenceNumber dsn = 0;
  Validity validity = Validity::valid;
  std::uint32_t hop_count = 0;
  NodeId next_hop;
  std::optional<SnStatus> sn_status;
};
struct NoEntryAssertion {
  NodeId node;
  NodeId destination;
};

using Assertion = std::variant<LoopAssertion, NoLoopsAssertion, EntryAssertion, NoEntryAssertion>;

struct ScenarioItem {
  std::variant<Event, Assertion> action;
  std::size_t line = 0;
};

struct Scenario {
  std::string name;
  Topology initial;
  std::optional<InterpretationConfig> config;
  std::vector<ScenarioItem> items;

  [[nodiscard]] std::vector<Event> events() const;
};

Scenario parse_scenario(std::string_view text);
std::string format_scenario(const Scenario& s);

struct AssertionResult {
  std::size_t line = 0;
  std::string expected;
  std::string actual;
  bool passed = false;
};

struct RunResult {
  GlobalState final_state;
  std::vector<AssertionResult> assertions;

  [[nodiscard]] bool all_passed() const;
};

/// Replays the scenario from a fresh network. EventError from a malformed
/// event is rethrown as ScenarioError carrying the directive's line.
RunResult run_scenario(const Scenario& s, const InterpretationConfig& cfg);

// `loop` also pins the intermediate entries that lead to the loop; `loop_only`
// asserts just the final s-x loop.
enum class Figure1Checks { none, loop, loop_only, loop_free };

enum class Figure1Variant { standard, increment_two };

/// The four-part loop construction over nodes {s, d, a, x}. With
/// Figure1Checks::loop it also asserts d's self-entry after part (e), s's
/// entry (d,3,invalid,1,d) after part (g) and the s-x loop at the end.
Scenario figure1_scenario(Figure1Checks checks = Figure1Checks::none);

/// A variant of the construction that still closes the s-x loop when own
/// sequence numbers grow by two per route request.
Scenario figure1_increment_two_scenario(Figure1Checks checks = Figure1Checks::none);

Scenario figure1_scenario(Figure1Variant variant, Figure1Checks checks);

/// increment_two when the configuration bumps its own number by two.
Figure1Variant figure1_default_variant(const InterpretationConfig& cfg);

/// Whether the construction ends in a loop under `cfg`. The self-entry
/// mechanism needs 3a with a RERR rule of 4a, 4b or 4c (only 4a and 4c in the
/// standard variant once numbers grow by two). Independently, 2b lets d's
/// sequence number go backwards in the standard variant, which closes the same
/// loop unless replies to oneself are dropped (3c).
bool figure1_expects_loop(const InterpretationConfig& cfg, Figure1Variant variant);

/// The checks `figure1 --expect auto` attaches.
Figure1Checks figure1_expected_checks(const InterpretationConfig& cfg, Figure1Variant variant);

}  // namespace aodv
