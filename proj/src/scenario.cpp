#include "aodv/scenario.hpp"

#include <charconv>
#include <sstream>

#include "aodv/format.hpp"

namespace aodv {
namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

class Parser {
 public:
  Scenario parse(std::string_view text) {
    std::size_t line_no = 0;
    while (!text.empty()) {
      auto nl = text.find('\n');
      auto line = text.substr(0, nl);
      text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
      ++line_no;
      line_ = line_no;
      auto tokens = tokenize(line);
      if (!tokens.empty()) directive(tokens);
    }
    return std::move(out_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ScenarioError(line_, what); }

  void arity(const std::vector<std::string_view>& t, std::size_t n) const {
    if (t.size() != n) fail("'" + std::string(t[0]) + "' expects " + std::to_string(n - 1) + " argument(s)");
  }

  NodeId node(std::string_view name) const {
    auto id = out_.initial.find(name);
    if (!id) fail("undeclared node '" + std::string(name) + "'");
    return *id;
  }

  std::uint32_t number(std::string_view text) const {
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size()) fail("expected a number, got '" + std::string(text) + "'");
    return v;
  }

  void event(Event e) {
    started_ = true;
    out_.items.push_back({e, line_});
  }

  void assertion(Assertion a) {
    started_ = true;
    out_.items.push_back({std::move(a), line_});
  }

  void directive(const std::vector<std::string_view>& t) {
    const auto cmd = t[0];
    if (cmd == "scenario") {
      if (t.size() < 2) fail("'scenario' expects a name");
      std::string name;
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (i > 1) name += ' ';
        name += t[i];
      }
      out_.name = std::move(name);
    } else if (cmd == "config") {
      arity(t, 2);
      auto cfg = find_preset(t[1]);
      if (!cfg) cfg = parse_config(t[1]);
      if (!cfg) fail("invalid configuration '" + std::string(t[1]) + "'");
      out_.config = cfg;
    } else if (cmd == "node") {
      if (started_) fail("nodes must be declared before the first event");
      if (t.size() < 2) fail("'node' expects at least one name");
      for (std::size_t i = 1; i < t.size(); ++i) {
        try {
          out_.initial.add_node(std::string(t[i]));
        } catch (const EventError& e) {
          fail(e.what());
        }
      }
    } else if (cmd == "link" || cmd == "unlink" || cmd == "newpkt") {
      arity(t, 3);
      const NodeId a = node(t[1]);
      const NodeId b = node(t[2]);
      if (a == b) fail("'" + std::string(cmd) + "' needs two distinct nodes");
      if (cmd == "link" && !started_) {
        out_.initial.link(a, b);
      } else if (cmd == "link") {
        event(Event::link_up(a, b));
      } else if (cmd == "unlink") {
        event(Event::link_down(a, b));
      } else {
        event(Event::new_packet(a, b));
      }
    } else if (cmd == "deliver") {
      arity(t, 2);
      event(Event::deliver_next(node(t[1])));
    } else if (cmd == "deliver-all") {
      arity(t, 1);
      event(Event::deliver_all());
    } else if (cmd == "assert-loop") {
      if (t.size() < 4) fail("'assert-loop' expects a destination and at least two cycle nodes");
      LoopReport expected{node(t[1]), {}};
      for (std::size_t i = 2; i < t.size(); ++i) expected.cycle.push_back(node(t[i]));
      std::rotate(expected.cycle.begin(), std::min_element(expected.cycle.begin(), expected.cycle.end()),
                  expected.cycle.end());
      assertion(LoopAssertion{std::move(expected)});
    } else if (cmd == "assert-no-loops") {
      arity(t, 1);
      assertion(NoLoopsAssertion{});
    } else if (cmd == "assert-entry") {
      if (t.size() != 7 && t.size() != 8) fail("'assert-entry' expects 6 or 7 arguments");
      EntryAssertion a;
      a.node = node(t[1]);
      a.destination = node(t[2]);
      a.dsn = number(t[3]);
      if (t[4] == "valid") {
        a.validity = Validity::valid;
      } else if (t[4] == "invalid") {
        a.validity = Validity::invalid;
      } else {
        fail("validity must be 'valid' or 'invalid'");
      }
      a.hop_count = number(t[5]);
      a.next_hop = node(t[6]);
      if (t.size() == 8) {
        if (t[7] == "known") {
          a.sn_status = SnStatus::known;
        } else if (t[7] == "unknown") {
          a.sn_status = SnStatus::unknown;
        } else {
          fail("status must be 'known' or 'unknown'");
        }
      }
      assertion(a);
    } else if (cmd == "assert-no-entry") {
      arity(t, 3);
      assertion(NoEntryAssertion{node(t[1]), node(t[2])});
    } else {
      fail("unknown directive '" + std::string(cmd) + "'");
    }
  }

  Scenario out_;
  std::size_t line_ = 0;
  bool started_ = false;
};

std::string describe(const Topology& topo, const Assertion& a) {
  if (const auto* loop = std::get_if<LoopAssertion>(&a)) return format_loop(topo, loop->expected);
  if (std::holds_alternative<NoLoopsAssertion>(a)) return "no loops";
  if (const auto* entry = std::get_if<EntryAssertion>(&a)) {
    std::string status = entry->sn_status ? (*entry->sn_status == SnStatus::known ? "known" : "unknown") : "*";
    return topo.name(entry->node) + ": (" + topo.name(entry->destination) + ',' + std::to_string(entry->dsn) + ',' +
           status + ',' + (entry->validity == Validity::valid ? "val" : "inval") + ',' +
           std::to_string(entry->hop_count) + ',' + topo.name(entry->next_hop) + ')';
  }
  const auto& none = std::get<NoEntryAssertion>(a);
  return topo.name(none.node) + ": no entry for " + topo.name(none.destination);
}

std::string describe_loops(const Topology& topo, const std::vector<LoopReport>& loops) {
  if (loops.empty()) return "no loops";
  std::string out;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    if (i != 0) out += "; ";
    out += format_loop(topo, loops[i]);
  }
  return out;
}

AssertionResult evaluate(const GlobalState& g, const Assertion& a, std::size_t line) {
  AssertionResult r;
  r.line = line;
  r.expected = describe(g.topology, a);
  if (const auto* loop = std::get_if<LoopAssertion>(&a)) {
    auto loops = check_loop_freedom(g);
    r.passed = std::find(loops.begin(), loops.end(), loop->expected) != loops.end();
    r.actual = describe_loops(g.topology, loops);
  } else if (std::holds_alternative<NoLoopsAssertion>(a)) {
    auto loops = check_loop_freedom(g);
    r.passed = loops.empty();
    r.actual = describe_loops(g.topology, loops);
  } else if (const auto* entry = std::get_if<EntryAssertion>(&a)) {
    const auto* actual = g.node(entry->node).table.find(entry->destination);
    if (actual == nullptr) {
      r.actual = g.topology.name(entry->node) + ": no entry";
    } else {
      r.actual = g.topology.name(entry->node) + ": " + format_entry(g.topology, *actual);
      r.passed = actual->dsn == entry->dsn && actual->validity == entry->validity &&
                 actual->hop_count == entry->hop_count && actual->next_hop == entry->next_hop &&
                 (!entry->sn_status || *entry->sn_status == actual->sn_status);
    }
  } else {
    const auto& none = std::get<NoEntryAssertion>(a);
    const auto* actual = g.node(none.node).table.find(none.destination);
    r.passed = actual == nullptr;
    r.actual = actual ? g.topology.name(none.node) + ": " + format_entry(g.topology, *actual)
                      : g.topology.name(none.node) + ": no entry";
  }
  return r;
}

std::string format_assertion(const Topology& topo, const Assertion& a) {
  std::ostringstream os;
  if (const auto* loop = std::get_if<LoopAssertion>(&a)) {
    os << "assert-loop " << topo.name(loop->expected.destination);
    for (NodeId n : loop->expected.cycle) os << ' ' << topo.name(n);
  } else if (std::holds_alternative<NoLoopsAssertion>(a)) {
    os << "assert-no-loops";
  } else if (const auto* e = std::get_if<EntryAssertion>(&a)) {
    os << "assert-entry " << topo.name(e->node) << ' ' << topo.name(e->destination) << ' ' << e->dsn << ' '
       << (e->validity == Validity::valid ? "valid" : "invalid") << ' ' << e->hop_count << ' '
       << topo.name(e->next_hop);
    if (e->sn_status) os << ' ' << (*e->sn_status == SnStatus::known ? "known" : "unknown");
  } else {
    const auto& n = std::get<NoEntryAssertion>(a);
    os << "assert-no-entry " << topo.name(n.node) << ' ' << topo.name(n.destination);
  }
  return os.str();
}

// Figure 1 over nodes s, d, a, x. Initial links s-x and d-a: s's first
// request must reach a through x, and only after a has learned its reverse
// route to s via d, so it is parked in x's queue until x-a comes up.
constexpr std::string_view kFigure1Parts[] = {
    R"(scenario figure1
node s d a x
# (a) initial topology
link s x
link d a
# (b) d searches for a; a and d learn routes to each other
newpkt d a
deliver-all
# (c) s searches for d; the request waits in x's queue
newpkt s d
# (d) topology change; s searches for x, flooded through d and a only
unlink s x
link s d
newpkt s x
deliver d
deliver s
deliver a
deliver d
# (e) x-a comes up; RREQ(s,d) reaches a, which answers from its table
link x a
deliver x
deliver a
deliver d
)",
    R"(deliver s
)",
    R"(# (f) topology change; d searches for x over d-s-x
unlink x a
link s x
newpkt d x
deliver-all
# (g) d loses a: self-entry and entry for a invalidated, RERR to s
unlink d a
deliver-all
)",
    R"(# (h) s loses d and searches for d again; x answers with its route via s
unlink s d
newpkt s d
deliver-all
)"};

constexpr std::string_view kFigure1AfterE = "assert-entry d d 2 valid 2 a known\n";
constexpr std::string_view kFigure1AfterG = "assert-entry s d 3 invalid 1 d\n";
constexpr std::string_view kFigure1Loop = "assert-loop d s x\n";
constexpr std::string_view kNoLoops = "assert-no-loops\n";

// With own sequence numbers growing by two, d's self-entry (3) plus one no
// longer matches the number d puts in its next request (5). Instead x raises
// d's own number to 4 by asking for d with its own invalidated entry (d,4),
// and receives the reply while its link to s is down, so that s's later RERR
// cannot reach it.
constexpr std::string_view kIncrementTwoParts[] = {
    R"(scenario figure1-incr2
node s d a x
# (a)-(e) as in figure1: d ends up with a self-entry via a
link s x
link d a
newpkt d a
deliver-all
newpkt s d
unlink s x
link s d
newpkt s x
deliver d
deliver s
deliver a
deliver d
link x a
deliver x
deliver a
deliver d
)",
    R"(deliver s
# (f) x learns its route to d from a, then loses a: x holds (d,4,invalid)
newpkt x d
deliver-all
unlink x a
# (g) x asks again over s; d lifts its own number to 4 and replies. The
# reply is still queued at x when s-x goes down
link s x
newpkt x d
deliver s
deliver d
deliver s
unlink s x
deliver x
deliver x
)",
    R"(# (h) d loses a and sends RERR (d,4) to s; s cannot pass it on to x
unlink d a
deliver-all
)",
    R"(# (i) s loses d, regains x and searches for d; x answers via s
unlink s d
link s x
newpkt s d
deliver-all
)"};

constexpr std::string_view kIncrementTwoAfterE = "assert-entry d d 3 valid 2 a known\n";
constexpr std::string_view kIncrementTwoAfterG = "assert-entry x d 4 valid 2 s\n";
constexpr std::string_view kIncrementTwoAfterH = "assert-entry s d 4 invalid 1 d\n";

}  // namespace

std::vector<Event> Scenario::events() const {
  std::vector<Event> out;
  for (const auto& item : items) {
    if (const auto* e = std::get_if<Event>(&item.action)) out.push_back(*e);
  }
  return out;
}

Scenario parse_scenario(std::string_view text) { return Parser{}.parse(text); }

std::string format_scenario(const Scenario& s) {
  std::ostringstream os;
  if (!s.name.empty()) os << "scenario " << s.name << '\n';
  if (s.config) os << "config " << to_string(*s.config) << '\n';
  if (s.initial.size() > 0) {
    os << "node";
    for (const auto& n : s.initial.names()) os << ' ' << n;
    os << '\n';
  }
  for (auto [a, b] : s.initial.links()) os << "link " << s.initial.name(a) << ' ' << s.initial.name(b) << '\n';
  bool first_event = true;
  for (const auto& item : s.items) {
    if (const auto* e = std::get_if<Event>(&item.action)) {
      // A leading LinkUp would be read back as part of the initial topology.
      if (first_event && e->kind == EventKind::link_up) os << "deliver-all\n";
      os << format_event(s.initial, *e) << '\n';
    } else {
      os << format_assertion(s.initial, std::get<Assertion>(item.action)) << '\n';
    }
    first_event = false;
  }
  return os.str();
}

bool RunResult::all_passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const auto& a) { return a.passed; });
}

RunResult run_scenario(const Scenario& s, const InterpretationConfig& cfg) {
  RunResult result;
  result.final_state = make_network(s.initial, cfg);
  for (const auto& item : s.items) {
    if (const auto* e = std::get_if<Event>(&item.action)) {
      try {
        apply_event(result.final_state, *e, cfg);
      } catch (const EventError& err) {
        throw ScenarioError(item.line, err.what());
      }
    } else {
      result.assertions.push_back(evaluate(result.final_state, std::get<Assertion>(item.action), item.line));
    }
  }
  return result;
}

Scenario figure1_scenario(Figure1Checks checks) {
  std::string text;
  text += kFigure1Parts[0];
  if (checks == Figure1Checks::loop) text += kFigure1AfterE;
  text += kFigure1Parts[1];
  text += kFigure1Parts[2];
  if (checks == Figure1Checks::loop) text += kFigure1AfterG;
  text += kFigure1Parts[3];
  if (checks == Figure1Checks::loop || checks == Figure1Checks::loop_only) text += kFigure1Loop;
  if (checks == Figure1Checks::loop_free) text += kNoLoops;
  return parse_scenario(text);
}

Scenario figure1_increment_two_scenario(Figure1Checks checks) {
  std::string text;
  text += kIncrementTwoParts[0];
  if (checks == Figure1Checks::loop) text += kIncrementTwoAfterE;
  text += kIncrementTwoParts[1];
  if (checks == Figure1Checks::loop) text += kIncrementTwoAfterG;
  text += kIncrementTwoParts[2];
  if (checks == Figure1Checks::loop) text += kIncrementTwoAfterH;
  text += kIncrementTwoParts[3];
  if (checks == Figure1Checks::loop || checks == Figure1Checks::loop_only) text += kFigure1Loop;
  if (checks == Figure1Checks::loop_free) text += kNoLoops;
  return parse_scenario(text);
}

Scenario figure1_scenario(Figure1Variant variant, Figure1Checks checks) {
  return variant == Figure1Variant::increment_two ? figure1_increment_two_scenario(checks) : figure1_scenario(checks);
}

Figure1Variant figure1_default_variant(const InterpretationConfig& cfg) {
  return cfg.rreq_sn_increment == 2 ? Figure1Variant::increment_two : Figure1Variant::standard;
}

namespace {

bool self_entry_loop(const InterpretationConfig& cfg, Figure1Variant variant) {
  if (cfg.self_entry != SelfEntryRule::allow_any) return false;
  if (cfg.rerr == RerrRule::copy || cfg.rerr == RerrRule::max) return true;
  return cfg.rerr == RerrRule::if_not_fresher &&
         (variant == Figure1Variant::increment_two || cfg.rreq_sn_increment == 1);
}

}  // namespace

bool figure1_expects_loop(const InterpretationConfig& cfg, Figure1Variant variant) {
  if (self_entry_loop(cfg, variant)) return true;
  return variant == Figure1Variant::standard && cfg.previous_hop == PreviousHopRule::overwrite &&
         cfg.self_entry != SelfEntryRule::discard_reply;
}

Figure1Checks figure1_expected_checks(const InterpretationConfig& cfg, Figure1Variant variant) {
  if (!figure1_expects_loop(cfg, variant)) return Figure1Checks::loop_free;
  const bool pinned = self_entry_loop(cfg, variant) && cfg.previous_hop != PreviousHopRule::overwrite &&
                      variant == figure1_default_variant(cfg);
  return pinned ? Figure1Checks::loop : Figure1Checks::loop_only;
}

}  // namespace aodv
