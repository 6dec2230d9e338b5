// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Each line is followed by the evidence it was judged on.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "aodv/explorer.hpp"
#include "aodv/report.hpp"
#include "aodv/scenario.hpp"
#include "cli.hpp"
#include "loop_oracle.hpp"
#include "support.hpp"

namespace aodv {
namespace {

using test::cfg;
using Clock = std::chrono::steady_clock;

constexpr NodeId s{0};
constexpr NodeId d{1};
constexpr NodeId a{2};
constexpr NodeId x{3};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)), start_(Clock::now()) {}

  void check(bool ok, const std::string& what) {
    if (!ok) {
      passed_ = false;
      notes_ << "    FAILED: " << what << '\n';
    }
  }
  void note(const std::string& what) { notes_ << "    " << what << '\n'; }

  bool report(int number) {
    std::cout << (passed_ ? "[PASS] " : "[FAIL] ") << number << ". " << title_ << " (" << std::fixed
              << std::setprecision(2) << seconds_since(start_) << " s)\n"
              << notes_.str() << std::flush;
    return passed_;
  }

 private:
  std::string title_;
  Clock::time_point start_;
  bool passed_ = true;
  std::ostringstream notes_;
};

std::string describe(const InterpretationConfig& c) { return to_string(c); }

ExploreBounds bounds(std::size_t nodes, std::size_t events, std::size_t links, std::size_t requests) {
  ExploreBounds b;
  b.node_count = nodes;
  b.max_events = events;
  b.max_link_changes = links;
  b.max_route_requests = requests;
  b.max_states = 16'000'000;
  return b;
}

std::string summary(const ExploreResult& r) {
  std::ostringstream os;
  os << r.states_visited << " states, " << r.transitions << " transitions, " << r.loops.size() << " loops, "
     << r.monotonicity_violations << " decrements, " << (r.exhausted ? "exhausted" : "NOT exhausted");
  return os.str();
}

// Figure 1 through part (g), as the starting point for searches that need
// the full construction's history.
std::vector<Event> figure1_through_g() {
  auto events = figure1_scenario().events();
  events.erase(std::find(events.begin(), events.end(), Event::link_down(s, d)), events.end());
  return events;
}

bool figure1_loop_prone() {
  Criterion c("Figure 1 replay ends in the s-x loop for d under 1b,2c,3a with 4a, 4b and 4c");
  for (const char* rule : {"4a", "4b", "4c"}) {
    const auto config = cfg(std::string("1b,2c,3a,") + rule);
    const auto start = Clock::now();
    const RunResult r = run_scenario(figure1_scenario(Figure1Checks::loop), config);
    const double t = seconds_since(start);
    const auto loops = check_loop_freedom(r.final_state);
    c.check(loops == std::vector<LoopReport>{{d, {s, x}}}, describe(config) + ": exactly one loop for d over {s,x}");
    c.check(r.assertions.size() == 3 && r.all_passed(),
            describe(config) + ": self-entry after (e), s (d,3,inval,1,d) after (g), loop at end");
    c.check(t < 1.0, describe(config) + ": runtime under 1 s");
    c.note(describe(config) + ": " + std::to_string(r.assertions.size()) + " assertions pass, " +
           std::to_string(loops.size()) + " loop, " + std::to_string(t * 1000).substr(0, 5) + " ms");
  }
  return c.report(1);
}

bool figure1_safe() {
  Criterion c("Figure 1 replay stays loop-free under 3b, 3c, 3d (with 4b) and under 3a with 4d or 4e");
  for (const char* text : {"1b,2c,3b,4b", "1b,2c,3c,4b", "1b,2c,3d,4b", "1b,2c,3a,4d", "1b,2c,3a,4e"}) {
    const auto config = cfg(text);
    const auto start = Clock::now();
    const RunResult r = run_scenario(figure1_scenario(Figure1Checks::loop_free), config);
    const double t = seconds_since(start);
    c.check(r.all_passed() && check_loop_freedom(r.final_state).empty(), std::string(text) + ": no loops");
    c.check(t < 1.0, std::string(text) + ": runtime under 1 s");
    c.note(std::string(text) + ": loop-free, " + std::to_string(t * 1000).substr(0, 5) + " ms");
  }
  return c.report(2);
}

bool preset_verdicts() {
  Criterion c("Implementation presets match their expected verdicts");
  const auto start = Clock::now();
  for (const char* name : {"aodv-uu", "kernel-aodv"}) {
    const auto config = cfg(name);
    const RunResult f1 = run_scenario(figure1_scenario(Figure1Checks::loop_free), config);
    c.check(f1.all_passed(), std::string(name) + ": figure1 loop-free");
    c.check(check_monotonicity(f1.final_state.trace).empty(), std::string(name) + ": figure1 without decrements");
    const auto b = bounds(4, 12, 2, 2);
    const auto r = explore(config, b);
    c.check(r.exhausted && r.loops.empty() && r.monotonicity_violations == 0,
            std::string(name) + ": exhaustive 4 nodes, 12 events, no loops or decrements");
    c.note(std::string(name) + " explore(4 nodes, 12 events, 2 link changes, 2 requests): " + summary(r));
  }
  for (const char* name : {"aodv-uiuc", "aodv-ucsb"}) {
    const auto r = explore(cfg(name), bounds(3, 10, 2, 2));
    c.check(!r.decrements.empty(), std::string(name) + ": decrement within 3 nodes, 10 events");
    if (!r.decrements.empty()) {
      const auto& w = r.decrements.front();
      c.note(std::string(name) + ": " + summary(r) + "; first witness " + std::to_string(w.events.size()) +
             " events, " + r.initial.name(w.violation.node) + "'s entry for " +
             r.initial.name(w.violation.destination) + " " + std::to_string(w.violation.before) + " -> " +
             std::to_string(w.violation.after));
    }
    const RunResult f1 = run_scenario(figure1_scenario(Figure1Checks::loop_only), cfg(name));
    c.check(f1.all_passed() && !check_monotonicity(f1.final_state.trace).empty(),
            std::string(name) + ": figure1 loops through a decrement");
  }
  {
    const auto config = cfg("aodv-ns2");
    const RunResult variant = run_scenario(figure1_increment_two_scenario(Figure1Checks::loop), config);
    c.check(variant.all_passed(), "aodv-ns2: increment-by-two variant ends in the s-x loop");
    const RunResult standard = run_scenario(figure1_scenario(Figure1Checks::loop_free), config);
    c.check(standard.all_passed(), "aodv-ns2: standard construction alone does not loop");
    c.note("aodv-ns2: variant " + std::string(variant.all_passed() ? "loops" : "does not loop") + " (" +
           std::to_string(variant.assertions.size()) + " assertions)");
  }
  c.check(seconds_since(start) < 600.0, "total runtime under 10 min");
  return c.report(3);
}

bool monotonicity_suite() {
  Criterion c("Sequence numbers never decrease under 1b,2c,*,4d; 1a and 2b each produce a decrement");
  std::size_t traces = 0;
  for (const char* self : {"3a", "3b", "3c", "3d"}) {
    const auto config = cfg(std::string("1b,2c,") + self + ",4d");
    for (const auto& b : {bounds(3, 10, 1, 3), bounds(4, 10, 1, 2)}) {
      const auto r = explore(config, b);
      traces += r.transitions;
      c.check(r.exhausted && r.monotonicity_violations == 0,
              describe(config) + " at " + std::to_string(b.node_count) + " nodes: no decrement");
      c.note(describe(config) + " " + std::to_string(b.node_count) + " nodes, 10 events: " + summary(r));
    }
  }
  c.check(traces >= 1000, "at least 1000 traces checked");
  c.note(std::to_string(traces) + " traces checked in total");
  for (const char* text : {"1a,2c,3a,4d", "1b,2b,3a,4d"}) {
    const auto r = explore(cfg(text), bounds(3, 10, 1, 3));
    c.check(!r.decrements.empty(), std::string(text) + ": decrement found");
    if (!r.decrements.empty()) {
      const auto& w = r.decrements.front();
      c.note(std::string(text) + ": " + summary(r) + "; e.g. " + std::to_string(w.violation.before) + " -> " +
             std::to_string(w.violation.after) + " after " + std::to_string(w.events.size()) + " events");
    }
  }
  return c.report(4);
}

bool oracle_equivalence() {
  Criterion c("Loop checker agrees with brute-force walk enumeration on every reachable state");
  std::size_t compared = 0;
  std::size_t looping = 0;
  std::size_t disagreements = 0;
  auto compare = [&](const GlobalState& g) {
    const auto fast = check_loop_freedom(g);
    ++compared;
    looping += !fast.empty();
    if (fast != test::brute_force_loops(g)) ++disagreements;
  };
  for (const auto& preset : presets()) {
    for (auto links : {InitialLinks::line, InitialLinks::complete, InitialLinks::none}) {
      auto b = bounds(3, 8, 2, 2);
      b.initial_links = links;
      const auto r = explore(preset.config, b, compare);
      c.check(r.exhausted, std::string(preset.name) + ": exhaustive");
    }
  }
  const std::size_t from_scratch = compared;
  c.note(std::to_string(from_scratch) + " states from 3-node, 8-event searches (all presets, three initial topologies)");
  // Small nets do not loop within 8 events, so also compare on states
  // reached from the Figure 1 history, where loops do occur.
  const Scenario f1 = figure1_scenario();
  const auto prefix = figure1_through_g();
  for (const char* text : {"rfc-strict-loop", "1b,2c,3a,4a", "1b,2c,3a,4c", "aodv-uiuc"}) {
    explore_from(f1.initial, prefix, cfg(text), bounds(4, 8, 2, 1), compare);
  }
  c.note(std::to_string(compared - from_scratch) + " further states from the Figure 1 prefix, " +
         std::to_string(looping) + " of all states contain a loop");
  c.check(looping > 0, "some compared states contain loops");
  c.check(disagreements == 0, std::to_string(disagreements) + " disagreements");
  c.note(std::to_string(disagreements) + " disagreements over " + std::to_string(compared) + " states");
  return c.report(5);
}

struct CliRun {
  int code;
  std::string out;
};

CliRun cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "aodvsim");
  std::vector<const char*> argv;
  for (const auto& arg : args) argv.push_back(arg.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str() + err.str()};
}

bool determinism() {
  Criterion c("Repeated explore runs are byte-identical and every witness replays to its verdict");
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "aodvsim-acceptance";
  fs::remove_all(root);
  fs::create_directories(root);

  Scenario prefix_scenario = figure1_scenario();
  prefix_scenario.items.clear();
  for (const auto& e : figure1_through_g()) prefix_scenario.items.push_back({e, 0});
  const fs::path prefix = root / "figure1-g.scn";
  std::ofstream(prefix) << format_scenario(prefix_scenario);

  std::size_t witnesses = 0;
  std::size_t replayed = 0;
  const std::vector<std::vector<std::string>> runs{
      {"explore", "--preset", "aodv-uiuc", "--nodes", "3", "--max-events", "8", "--format", "json"},
      {"explore", "--preset", "rfc-strict-safe", "--nodes", "4", "--max-events", "8"},
      {"explore", "--preset", "rfc-strict-loop", "--from", prefix.string(), "--max-events", "8",
       "--max-route-requests", "1", "--format", "json"},
      {"explore", "--amb3", "3a", "--amb4", "4a", "--from", prefix.string(), "--max-events", "8",
       "--max-route-requests", "2"},
  };
  for (std::size_t i = 0; i < runs.size(); ++i) {
    auto args = runs[i];
    const fs::path dir_one = root / ("w" + std::to_string(i) + "a");
    const fs::path dir_two = root / ("w" + std::to_string(i) + "b");
    auto first_args = args;
    first_args.insert(first_args.end(), {"--witness-dir", dir_one.string()});
    auto second_args = args;
    second_args.insert(second_args.end(), {"--witness-dir", dir_two.string()});
    const CliRun first = cli_run(first_args);
    const CliRun second = cli_run(second_args);
    c.check(first.code == 0 && first.out == second.out, "run " + std::to_string(i) + ": identical reports");
    if (!fs::exists(dir_one)) continue;
    for (const auto& f : fs::directory_iterator(dir_one)) {
      ++witnesses;
      std::ifstream a_in(f.path()), b_in(dir_two / f.path().filename());
      std::stringstream a_text, b_text;
      a_text << a_in.rdbuf();
      b_text << b_in.rdbuf();
      c.check(a_text.str() == b_text.str(), f.path().filename().string() + ": identical witness files");
      const CliRun replay = cli_run({"run", f.path().string()});
      if (replay.code == 0) {
        ++replayed;
      } else {
        c.check(false, f.path().filename().string() + " does not replay:\n" + replay.out);
      }
    }
  }
  c.check(witnesses > 0, "at least one witness produced");
  c.note(std::to_string(runs.size()) + " explore configurations run twice; " + std::to_string(replayed) + "/" +
         std::to_string(witnesses) + " witnesses replay to their loop");
  fs::remove_all(root);
  return c.report(6);
}

RoutingTableEntry e(NodeId dest, SequenceNumber dsn, SnStatus st, Validity v, std::uint32_t hops, NodeId next) {
  return {dest, dsn, st, v, hops, next, {}};
}

bool rule_table() {
  Criterion c("Rule-table examples");
  constexpr auto K = SnStatus::known;
  constexpr auto U = SnStatus::unknown;
  constexpr auto V = Validity::valid;
  constexpr auto I = Validity::invalid;
  const NodeId p{4};
  int checked = 0;
  auto expect = [&](bool ok, const std::string& what) {
    ++checked;
    c.check(ok, what);
  };
  auto node = [](NodeId self, std::initializer_list<RoutingTableEntry> entries, SequenceNumber own = 1) {
    NodeState n = make_node(self, cfg("rfc-strict-loop"));
    n.own_sn = own;
    for (const auto& entry : entries) n.table.upsert(entry);
    return n;
  };
  const auto loopy = cfg("rfc-strict-loop");

  {
    auto o = originate_rreq(node(d, {}), a, loopy);
    expect(o.state.own_sn == 2 && o.rreq.originator_sn == 2, "originate: own_sn 1 -> 2");
    o = originate_rreq(node(s, {e(d, 3, K, I, 1, d)}), d, loopy);
    expect(o.rreq.dest_sn == 3, "originate: dest_sn copied from invalid entry");
    o = originate_rreq(node(s, {}), x, loopy);
    expect(o.rreq.dest_sn == 0 && o.rreq.dest_sn_unknown, "originate: no entry -> unknown");
  }
  expect(update_previous_hop(std::nullopt, d, loopy) == e(d, 0, U, V, 1, d), "previous hop: creation");
  expect(update_previous_hop(e(d, 5, K, V, 2, a), d, cfg("1b,2b,3a,4b")) == e(d, 0, U, V, 1, d), "previous hop: 2b");
  expect(update_previous_hop(e(d, 5, K, V, 2, a), d, loopy) == e(d, 5, K, V, 1, d), "previous hop: 2c");
  {
    RreqMessage m{1, s, 4, x, 0, true, 2};
    expect(update_reverse_route(std::nullopt, m, d) == e(s, 4, K, V, 2, d), "reverse route: creation");
    m.hop_count = 3;
    expect(update_reverse_route(e(s, 4, K, V, 2, d), m, a) == e(s, 4, K, V, 2, d), "reverse route: not fresher");
    m.hop_count = 2;
    expect(update_reverse_route(e(s, 4, K, V, 3, d), m, a) == e(s, 4, K, V, 2, a), "reverse route: shorter");
  }
  {
    auto out = handle_rreq(node(a, {}), RreqMessage{1, s, 2, x, 0, true, 3}, d, loopy);
    expect(out.emissions.size() == 1 && std::get<BroadcastRreq>(out.emissions[0]).rreq.hop_count == 4,
           "handle_rreq: no entry -> rebroadcast with hop_count + 1");
  }
  {
    const RrepMessage m{s, d, 2, 1};
    expect(update_forward_route(e(d, 5, U, V, 2, a), m, a, cfg("1a,2c,3a,4b")) == e(d, 2, K, V, 1, a),
           "forward route: 1a copies lower sn");
    expect(!update_forward_route(e(d, 5, U, V, 2, a), m, a, loopy), "forward route: 1b keeps entry");
    expect(update_forward_route(std::nullopt, m, a, loopy) == e(d, 2, K, V, 1, a), "forward route: creation");
  }
  {
    const auto before = node(d, {e(a, 1, K, V, 1, a), e(s, 1, K, V, 1, s)}, 2);
    auto out = handle_rrep(before, RrepMessage{s, d, 2, 1}, a, cfg("1b,2c,3c,4b"));
    expect(out.state.table == before.table && out.emissions.empty(), "handle_rrep: 3c ignores");
    out = handle_rrep(before, RrepMessage{s, d, 2, 1}, a, cfg("1b,2c,3d,4b"));
    expect(out.state.table == before.table && out.emissions.size() == 1 &&
               std::get<UnicastRrep>(out.emissions[0]).target == s,
           "handle_rrep: 3d forwards without self-entry");
  }
  {
    auto out = detect_link_break(node(d, {e(s, 1, K, V, 1, s)}), a);
    expect(!out.rerr, "link break: nothing routed via neighbour");
    out = detect_link_break(node(d, {e(a, 1, K, V, 1, a)}), a);
    expect(*out.state.table.find(a) == e(a, 2, K, I, 1, a) && out.rerr && out.recipients.empty(),
           "link break: invalidated, RERR without recipients");
  }
  {
    const auto fresh = node(s, {e(d, 2, K, V, 1, d)});
    for (const char* rule : {"4a", "4b", "4c", "4e"}) {
      auto out = handle_rerr(fresh, RerrMessage{{{d, 3}}}, d, cfg(std::string("1b,2c,3a,") + rule));
      expect(*out.state.table.find(d) == e(d, 3, K, I, 1, d), std::string("RERR (d,3) on (d,2): ") + rule);
    }
    const auto stale = node(s, {e(d, 5, K, V, 1, p)});
    const std::pair<const char*, RoutingTableEntry> split[] = {
        {"4a", e(d, 3, K, I, 1, p)}, {"4b", e(d, 5, K, V, 1, p)}, {"4c", e(d, 5, K, I, 1, p)},
        {"4d", e(d, 6, K, I, 1, p)}, {"4e", e(d, 5, K, V, 1, p)}};
    for (const auto& [rule, result] : split) {
      auto out = handle_rerr(stale, RerrMessage{{{d, 3}}}, p, cfg(std::string("1b,2c,3a,") + rule));
      expect(*out.state.table.find(d) == result, std::string("RERR (d,3) on (d,5): ") + rule);
    }
    auto out = handle_rerr(node(s, {e(d, 2, K, V, 1, a)}), RerrMessage{{{d, 3}}}, d, loopy);
    expect(out.state.table.find(d)->is_valid() && !out.rerr, "RERR from a non next hop is ignored");
  }
  {
    Topology t = test::topology({"s", "d", "a", "x"});
    GlobalState g = make_network(t, loopy);
    expect(apply_event(g, Event::deliver_next(s), loopy) == StepResult::no_op, "deliver on empty queue is a no-op");
    g.topology.link(s, d);
    unicast_or_fail(g, s, d, RrepMessage{a, x, 1, 0}, loopy);
    unicast_or_fail(g, s, d, RrepMessage{a, x, 2, 0}, loopy);
    expect(g.inflight[d.value].size() == 2 && std::get<RrepMessage>(g.inflight[d.value][0].message).dest_sn == 1,
           "unicast to a neighbour queues FIFO");
    g.nodes[s.value].table.upsert(e(x, 1, K, V, 1, a));
    unicast_or_fail(g, s, a, RrepMessage{d, x, 1, 0}, loopy);
    expect(!g.node(s).table.find(x)->is_valid(), "failed unicast breaks routes via the target");
    const GlobalState before = g;
    unicast_or_fail(g, s, x, RrepMessage{d, a, 1, 0}, loopy);
    expect(g.nodes == before.nodes && g.inflight == before.inflight, "failed unicast without routes changes nothing");
    expect(check_loop_freedom(make_network(t, loopy)).empty(), "empty tables are loop-free");
    expect(check_monotonicity({}).empty(), "empty trace has no decrements");
    const auto kernel = cfg("kernel-aodv");
    const GlobalState fresh = make_network(t, kernel);
    expect(check_self_entries(fresh, kernel).empty(), "3b: optimal self-entries at start");
    const auto uu = cfg("1b,2c,3c,4b");
    const RunResult r = run_scenario(figure1_scenario(), uu);
    expect(check_self_entries(r.final_state, uu).empty(), "3c: no self-entries after figure1");
  }
  {
    const Topology t = explore_topology(bounds(3, 0, 0, 0));
    expect(check_loop_freedom(replay_witness(t, {}, loopy)).empty(), "empty witness replays to a loop-free state");
    const auto r = explore(loopy, bounds(3, 0, 2, 2));
    expect(r.states_visited == 1 && r.exhausted, "zero events: one state");
  }
  c.note(std::to_string(checked) + " examples checked");
  return c.report(7);
}

}  // namespace
}  // namespace aodv

int main() {
  using namespace aodv;
  int failed = 0;
  for (auto criterion : {figure1_loop_prone, figure1_safe, preset_verdicts, monotonicity_suite, oracle_equivalence,
                         determinism, rule_table}) {
    failed += !criterion();
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}
