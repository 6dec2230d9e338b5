#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "aodv/config.hpp"
#include "aodv/explorer.hpp"
#include "aodv/report.hpp"
#include "aodv/scenario.hpp"

namespace aodv::cli {
namespace {

constexpr std::string_view kDefaultPreset = "rfc-strict-loop";

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigFlags {
  std::string preset;
  std::string amb1, amb2, amb3, amb4;
  std::uint32_t sn_increment = 0;

  void attach(CLI::App& app) {
    app.add_option("--preset", preset, "Named interpretation preset (see `presets`)");
    app.add_option("--amb1", amb1, "Unknown-sn update on RREP: 1a|1b");
    app.add_option("--amb2", amb2, "Previous-hop update: 2a|2b|2c");
    app.add_option("--amb3", amb3, "Self-entries: 3a|3b|3c|3d");
    app.add_option("--amb4", amb4, "RERR invalidation: 4a|4b|4c|4d|4e");
    app.add_option("--sn-increment", sn_increment, "Own sequence-number increment per RREQ: 1|2");
  }

  // Precedence: individual flags, then --preset, then the scenario's own
  // config line, then the default preset.
  [[nodiscard]] InterpretationConfig resolve(const std::optional<InterpretationConfig>& from_scenario) const {
    InterpretationConfig cfg = from_scenario.value_or(*find_preset(kDefaultPreset));
    if (!preset.empty()) {
      auto p = find_preset(preset);
      if (!p) throw InputError("unknown preset '" + preset + "'");
      cfg = *p;
    }
    auto pick = [](const std::string& text, auto parse, auto& field, const char* flag) {
      if (text.empty()) return;
      auto v = parse(text);
      if (!v) throw InputError(std::string("invalid value '") + text + "' for " + flag);
      field = *v;
    };
    pick(amb1, parse_unknown_sn_rule, cfg.unknown_sn, "--amb1");
    pick(amb2, parse_previous_hop_rule, cfg.previous_hop, "--amb2");
    pick(amb3, parse_self_entry_rule, cfg.self_entry, "--amb3");
    pick(amb4, parse_rerr_rule, cfg.rerr, "--amb4");
    if (sn_increment != 0) {
      if (sn_increment != 1 && sn_increment != 2) throw InputError("--sn-increment must be 1 or 2");
      cfg.rreq_sn_increment = sn_increment;
    }
    return cfg;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

int report_run(const Scenario& scenario, const InterpretationConfig& cfg, const std::string& format,
               const std::string& trace_path, std::ostream& out) {
  RunResult result = run_scenario(scenario, cfg);
  if (!trace_path.empty()) write_file(trace_path, trace_text(result.final_state));
  if (format == "json") {
    out << run_report_json(scenario, cfg, result).dump(2) << '\n';
  } else {
    out << run_report_text(scenario, cfg, result);
  }
  return result.all_passed() ? kExitOk : kExitAssertionFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-free AODV simulator with configurable RFC interpretations"};
  app.require_subcommand(1);

  std::string format = "text";
  auto add_format = [&format](CLI::App* cmd) {
    cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* presets_cmd = app.add_subcommand("presets", "List interpretation presets");

  ConfigFlags run_flags;
  std::string scenario_path;
  std::string trace_path;
  auto* run_cmd = app.add_subcommand("run", "Replay a scenario file and check its assertions");
  run_cmd->add_option("scenario", scenario_path, "Scenario file")->required();
  run_cmd->add_option("--trace", trace_path, "Write the transition trace to this file");
  run_flags.attach(*run_cmd);
  add_format(run_cmd);

  ConfigFlags fig_flags;
  std::string fig_expect = "auto";
  std::string fig_variant = "auto";
  bool fig_emit = false;
  auto* fig_cmd = app.add_subcommand("figure1", "Run the built-in four-part loop construction");
  fig_flags.attach(*fig_cmd);
  fig_cmd->add_option("--expect", fig_expect, "Assertions to attach: auto picks from the configuration")
      ->check(CLI::IsMember({"auto", "loop", "loop-only", "loop-free", "none"}));
  fig_cmd->add_option("--variant", fig_variant, "standard, incr2, or auto (incr2 when --sn-increment is 2)")
      ->check(CLI::IsMember({"auto", "standard", "incr2"}));
  fig_cmd->add_flag("--emit", fig_emit, "Print the scenario file instead of running it");
  fig_cmd->add_option("--trace", trace_path, "Write the transition trace to this file");
  add_format(fig_cmd);

  ConfigFlags exp_flags;
  ExploreBounds bounds;
  std::string initial_links = "line";
  std::string witness_dir;
  std::string from_path;
  bool seedless = false;
  auto* exp_cmd = app.add_subcommand("explore", "Bounded exhaustive search for loops and sequence-number decrements");
  exp_flags.attach(*exp_cmd);
  exp_cmd->add_option("--nodes", bounds.node_count, "Number of nodes (2..5)");
  exp_cmd->add_option("--max-events", bounds.max_events, "Maximum events per path");
  exp_cmd->add_option("--max-link-changes", bounds.max_link_changes, "Maximum link up/down events per path");
  exp_cmd->add_option("--max-route-requests", bounds.max_route_requests, "Maximum new-packet events per path");
  exp_cmd->add_option("--max-states", bounds.max_states, "Visited-state store capacity");
  exp_cmd->add_option("--initial-links", initial_links, "Initial topology")
      ->check(CLI::IsMember({"none", "line", "complete"}));
  exp_cmd->add_option("--from", from_path, "Start from the state reached by this scenario's events");
  exp_cmd->add_option("--witness-dir", witness_dir, "Write each loop witness as a scenario file here");
  exp_cmd->add_flag("--seedless", seedless, "No-op: exploration never uses randomness");
  add_format(exp_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, out, msg);
    err << msg.str();
    return kExitInputError;
  }

  try {
    if (presets_cmd->parsed()) {
      for (const auto& p : presets()) out << p.name << "  " << to_string(p.config) << "  " << p.description << '\n';
      return kExitOk;
    }

    if (run_cmd->parsed()) {
      Scenario scenario = parse_scenario(read_file(scenario_path));
      return report_run(scenario, run_flags.resolve(scenario.config), format, trace_path, out);
    }

    if (fig_cmd->parsed()) {
      const InterpretationConfig cfg = fig_flags.resolve(std::nullopt);
      const Figure1Variant variant = fig_variant == "auto"       ? figure1_default_variant(cfg)
                                     : fig_variant == "incr2" ? Figure1Variant::increment_two
                                                              : Figure1Variant::standard;
      Figure1Checks checks = Figure1Checks::none;
      if (fig_expect == "auto") {
        checks = figure1_expected_checks(cfg, variant);
      } else if (fig_expect == "loop") {
        checks = Figure1Checks::loop;
      } else if (fig_expect == "loop-only") {
        checks = Figure1Checks::loop_only;
      } else if (fig_expect == "loop-free") {
        checks = Figure1Checks::loop_free;
      }
      Scenario scenario = figure1_scenario(variant, checks);
      if (fig_emit) {
        scenario.config = cfg;
        out << format_scenario(scenario);
        return kExitOk;
      }
      return report_run(scenario, cfg, format, trace_path, out);
    }

    if (exp_cmd->parsed()) {
      bounds.initial_links = initial_links == "none"       ? InitialLinks::none
                             : initial_links == "complete" ? InitialLinks::complete
                                                           : InitialLinks::line;
      try {
        validate_bounds(bounds);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      ExploreResult result;
      InterpretationConfig cfg;
      if (!from_path.empty()) {
        Scenario start = parse_scenario(read_file(from_path));
        cfg = exp_flags.resolve(start.config);
        auto prefix = start.events();
        result = explore_from(start.initial, prefix, cfg, bounds);
      } else {
        cfg = exp_flags.resolve(std::nullopt);
        result = explore(cfg, bounds);
      }
      if (!witness_dir.empty()) {
        std::filesystem::create_directories(witness_dir);
        for (std::size_t i = 0; i < result.loops.size(); ++i) {
          const std::string name = "witness-" + std::to_string(i + 1);
          auto scenario = witness_scenario(result.initial, result.loops[i], cfg, name);
          write_file(std::filesystem::path(witness_dir) / (name + ".scn"), format_scenario(scenario));
        }
      }
      if (format == "json") {
        out << explore_report_json(cfg, bounds, result).dump(2) << '\n';
      } else {
        out << explore_report_text(cfg, bounds, result);
      }
      return kExitOk;
    }
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const WitnessError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const EventError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace aodv::cli
