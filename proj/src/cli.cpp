#include "opjhcpp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "opjhcpp/errors.hpp"
#include "opjhcpp/io.hpp"
#include "opjhcpp/paths.hpp"
#include "opjhcpp/placement.hpp"
#include "opjhcpp/rpf.hpp"
#include "opjhcpp/topology.hpp"
#include "opjhcpp/vsdn.hpp"

namespace opjhcpp {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct GlobalArgs {
  std::string topology_path;
  std::string scenario_path;
  std::string out_dir;
  bool quiet = false;
  int threads = 0;
  bool dump_distances = false;
};

struct Workspace {
  ScenarioConfig config;
  PhysicalTopology topology;
};

void note(const GlobalArgs& args, const std::string& line) {
  if (!args.quiet) {
    std::cout << line << "\n";
  }
}

fs::path out_path(const GlobalArgs& args, const std::string& name) {
  return fs::path(args.out_dir) / name;
}

void ensure_out_dir(const GlobalArgs& args) {
  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + args.out_dir + "': " + ec.message());
  }
}

void emit(const GlobalArgs& args, const std::string& name, const std::string& content) {
  const fs::path path = out_path(args, name);
  write_file_atomic(path, content);
  note(args, "wrote " + path.string());
}

Workspace load_workspace(const GlobalArgs& args) {
  ScenarioConfig config = load_scenario(read_file(args.scenario_path));
  PhysicalTopology topology = parse_graphml(read_file(args.topology_path), config.parse_options());
  validate_scenario(config, topology);
  return Workspace{std::move(config), std::move(topology)};
}

json nodes_json(const PhysicalTopology& topology) {
  json rows = json::array();
  for (const PhysicalNode& node : topology.nodes) {
    json row{{"index", node.index}, {"label", node.label}, {"source_id", node.source_id}};
    rows.push_back(std::move(row));
  }
  return rows;
}

json scenario_json(const ScenarioConfig& config) {
  json j{{"num_vsdns", config.num_vsdns},
         {"demand_size_min", config.demand_size_min},
         {"demand_size_max", config.demand_size_max},
         {"seed", config.seed},
         {"hypervisor_candidates", config.hypervisor_candidates},
         {"controller_candidates", config.controller_candidates},
         {"max_hypervisors", config.max_hypervisors},
         {"max_controllers", config.max_controllers},
         {"c_proc_ms", config.c_proc_ms},
         {"h_proc_ms", config.h_proc_ms},
         {"propagation_speed_km_per_ms", config.propagation_speed_km_per_ms}};
  if (config.default_link_latency_ms.has_value()) {
    j["default_link_latency_ms"] = *config.default_link_latency_ms;
  }
  return j;
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t seconds = std::chrono::system_clock::to_time_t(now);
  std::tm utc{};
  gmtime_r(&seconds, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

// The manifest is the one output that may differ between runs (it carries the
// wall-clock timestamp and duration); every other file is byte-deterministic.
void write_manifest(const GlobalArgs& args, const std::string& command, const Clock::time_point& started,
                    json extra) {
  const double duration_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(Clock::now() - started).count();
  json manifest{{"command", command},
                {"created_utc", timestamp_utc()},
                {"duration_ms", duration_ms},
                {"out_dir", args.out_dir},
                {"threads", args.threads},
                {"tool_version", kToolVersion}};
  manifest.update(extra);
  emit(args, "manifest_" + command + ".json", manifest.dump(2) + "\n");
}

json inputs_json(const GlobalArgs& args, const Workspace& ws) {
  return json{{"topology_path", args.topology_path},
              {"scenario_path", args.scenario_path},
              {"config", scenario_json(ws.config)},
              {"nodes", nodes_json(ws.topology)}};
}

void dump_distances(const GlobalArgs& args, const ShortestPathTable& table) {
  if (!args.dump_distances) {
    return;
  }
  std::ostringstream csv;
  csv << "source";
  for (int node = 0; node < table.node_count(); ++node) {
    csv << ',' << node;
  }
  csv << '\n';
  for (int source = 0; source < table.node_count(); ++source) {
    csv << source;
    for (int target = 0; target < table.node_count(); ++target) {
      csv << ',' << format_double(table.dist(source, target));
    }
    csv << '\n';
  }
  emit(args, "distances.csv", csv.str());
}

json metrics_json(const MetricSet& metrics) {
  return json{{"worst", metrics.worst},
              {"avg", metrics.avg},
              {"avg_max", metrics.avg_max},
              {"max_avg", metrics.max_avg}};
}

std::vector<ObjectiveKind> parse_objectives(const std::string& text) {
  if (text == "all") {
    return std::vector<ObjectiveKind>(kAllObjectives.begin(), kAllObjectives.end());
  }
  const std::optional<ObjectiveKind> kind = objective_from_name(text);
  if (!kind.has_value()) {
    throw ConfigError("unknown objective '" + text + "' (use worst, avg, avgmax, maxavg, or all)");
  }
  return {*kind};
}

int cmd_solve(const GlobalArgs& args, const std::string& objective_arg) {
  const auto started = Clock::now();
  const std::vector<ObjectiveKind> objectives = parse_objectives(objective_arg);
  const Workspace ws = load_workspace(args);
  ensure_out_dir(args);

  const ShortestPathTable table = all_pairs_shortest(ws.topology, args.threads);
  dump_distances(args, table);
  const std::vector<VsdnInstance> vsdns = generate_vsdns(ws.config, ws.topology);
  const CostTensor costs =
      compute_cost_tensor(table, vsdns, ws.config.hypervisor_candidates, ws.config.controller_candidates);

  std::ostringstream csv;
  csv << "objective,controllers,hypervisors,worst,avg,avg_max,max_avg\n";
  json solved = json::array();
  for (const ObjectiveKind objective : objectives) {
    const PlacementResult result = solve(objective, ws.config, costs, vsdns, args.threads);
    const std::string name = objective_name(objective);
    csv << name << ',' << csv_field(join_indices(result.placement.controllers)) << ','
        << csv_field(join_indices(result.placement.hypervisors)) << ','
        << format_double(result.metrics.worst) << ',' << format_double(result.metrics.avg) << ','
        << format_double(result.metrics.avg_max) << ',' << format_double(result.metrics.max_avg) << '\n';

    json record{{"objective", name},
                {"objective_value", result.metrics.value(objective)},
                {"controllers", result.placement.controllers},
                {"hypervisors", result.placement.hypervisors},
                {"metrics", metrics_json(result.metrics)},
                {"per_vsdn_worst", result.metrics.per_vsdn_worst}};
    emit(args, "solve_" + name + ".json", record.dump(2) + "\n");
    solved.push_back(name);
  }
  emit(args, "solve.csv", csv.str());

  json extra = inputs_json(args, ws);
  extra["objectives"] = solved;
  write_manifest(args, "solve", started, std::move(extra));
  return 0;
}

json load_json(const LoadReport& report) {
  json per_vsdn = json::array();
  for (const VsdnLoad& load : report.per_vsdn) {
    per_vsdn.push_back(json{{"vsdn", load.vsdn_id}, {"cs", load.cs}, {"cp", load.cp}, {"dptc", load.dptc}});
  }
  return json{{"controller", report.controller},
              {"hypervisor", report.hypervisor},
              {"cs", report.cs},
              {"cp", report.cp},
              {"dptc", report.dptc},
              {"reduction", report.reduction},
              {"per_vsdn", std::move(per_vsdn)}};
}

int cmd_rpf(const GlobalArgs& args, bool scan, std::optional<int> controller, std::optional<int> hypervisor) {
  const auto started = Clock::now();
  if (!scan && (!controller.has_value() || !hypervisor.has_value())) {
    throw ConfigError("rpf needs either --scan or both --controller and --hypervisor");
  }
  if (scan && (controller.has_value() || hypervisor.has_value())) {
    throw ConfigError("--scan cannot be combined with --controller/--hypervisor");
  }
  const Workspace ws = load_workspace(args);
  ensure_out_dir(args);

  const ShortestPathTable table = all_pairs_shortest(ws.topology, args.threads);
  dump_distances(args, table);
  const std::vector<VsdnInstance> vsdns = generate_vsdns(ws.config, ws.topology);

  json extra = inputs_json(args, ws);
  if (!scan) {
    const LoadReport report =
        rpf_simulate(table, vsdns, *controller, *hypervisor, ws.config.c_proc_ms, ws.config.h_proc_ms);
    emit(args, "rpf_single.json", load_json(report).dump(2) + "\n");
    extra["controller"] = *controller;
    extra["hypervisor"] = *hypervisor;
    write_manifest(args, "rpf", started, std::move(extra));
    return 0;
  }

  const CostTensor costs =
      compute_cost_tensor(table, vsdns, ws.config.hypervisor_candidates, ws.config.controller_candidates);
  const std::vector<ScanRow> rows =
      tradeoff_scan(table, vsdns, ws.config.controller_candidates, ws.config.hypervisor_candidates, costs,
                    ws.config.c_proc_ms, ws.config.h_proc_ms);
  const bool observed = tradeoff_observed(rows);

  std::ostringstream csv;
  csv << "controller,hypervisor,worst,avg,avg_max,max_avg,cs,cp,dptc,reduction,"
         "is_latency_opt_worst,is_latency_opt_avg,is_latency_opt_avgmax,is_latency_opt_maxavg,"
         "is_reduction_max\n";
  std::ostringstream plot;
  plot << "controller,hypervisor,vsdn_id,cs,cp,dptc\n";
  json json_rows = json::array();
  for (const ScanRow& row : rows) {
    csv << row.controller << ',' << row.hypervisor << ',' << format_double(row.metrics.worst) << ','
        << format_double(row.metrics.avg) << ',' << format_double(row.metrics.avg_max) << ','
        << format_double(row.metrics.max_avg) << ',' << row.load.cs << ',' << row.load.cp << ','
        << row.load.dptc << ',' << format_double(row.load.reduction) << ',' << (row.latency_opt_worst ? 1 : 0)
        << ',' << (row.latency_opt_avg ? 1 : 0) << ',' << (row.latency_opt_avgmax ? 1 : 0) << ','
        << (row.latency_opt_maxavg ? 1 : 0) << ',' << (row.reduction_max ? 1 : 0) << '\n';
    for (const VsdnLoad& load : row.load.per_vsdn) {
      plot << row.controller << ',' << row.hypervisor << ',' << load.vsdn_id << ',' << load.cs << ','
           << load.cp << ',' << load.dptc << '\n';
    }
    json_rows.push_back(json{{"controller", row.controller},
                             {"hypervisor", row.hypervisor},
                             {"worst", row.metrics.worst},
                             {"avg", row.metrics.avg},
                             {"avg_max", row.metrics.avg_max},
                             {"max_avg", row.metrics.max_avg},
                             {"cs", row.load.cs},
                             {"cp", row.load.cp},
                             {"dptc", row.load.dptc},
                             {"reduction", row.load.reduction},
                             {"is_latency_opt_worst", row.latency_opt_worst},
                             {"is_latency_opt_avg", row.latency_opt_avg},
                             {"is_latency_opt_avgmax", row.latency_opt_avgmax},
                             {"is_latency_opt_maxavg", row.latency_opt_maxavg},
                             {"is_reduction_max", row.reduction_max}});
  }
  emit(args, "rpf_scan.csv", csv.str());
  emit(args, "rpf_plot_data.csv", plot.str());
  json scan_json{{"nodes", nodes_json(ws.topology)},
                 {"rows", std::move(json_rows)},
                 {"tradeoff_observed", observed}};
  emit(args, "rpf_scan.json", scan_json.dump(2) + "\n");
  note(args, observed ? "trade-off observed: the reduction-maximal pair is not latency-optimal"
                      : "no trade-off in this scan");

  extra["tradeoff_observed"] = observed;
  write_manifest(args, "rpf", started, std::move(extra));
  return 0;
}

int cmd_converge(const GlobalArgs& args, int iterations) {
  const auto started = Clock::now();
  if (iterations < 1) {
    throw ConfigError("--iterations must be at least 1");
  }
  const Workspace ws = load_workspace(args);
  ensure_out_dir(args);
  if (args.dump_distances) {
    dump_distances(args, all_pairs_shortest(ws.topology, args.threads));
  }

  const ConvergenceTable result = converge_candidates(ws.config, ws.topology, iterations, args.threads);

  std::ostringstream csv;
  csv << "objective,controllers,hypervisors,wins\n";
  json tally = json::object();
  for (std::size_t slot = 0; slot < kAllObjectives.size(); ++slot) {
    const std::string name = objective_name(kAllObjectives[slot]);
    json rows = json::array();
    for (const PlacementWins& wins : result.per_objective[slot]) {
      csv << name << ',' << csv_field(join_indices(wins.placement.controllers)) << ','
          << csv_field(join_indices(wins.placement.hypervisors)) << ',' << wins.wins << '\n';
      rows.push_back(json{{"controllers", wins.placement.controllers},
                          {"hypervisors", wins.placement.hypervisors},
                          {"wins", wins.wins}});
    }
    tally[name] = std::move(rows);
  }
  emit(args, "converge.csv", csv.str());
  json converge_json{{"iterations", result.iterations}, {"wins", std::move(tally)}};
  emit(args, "converge.json", converge_json.dump(2) + "\n");

  json extra = inputs_json(args, ws);
  extra["iterations"] = iterations;
  write_manifest(args, "converge", started, std::move(extra));
  return 0;
}

json read_json_file(const fs::path& path) {
  const std::string text = read_file(path.string());
  json parsed = json::parse(text, nullptr, false);
  if (parsed.is_discarded()) {
    throw ParseError("file '" + path.string() + "' is not valid JSON");
  }
  return parsed;
}

void report_scan_section(std::ostringstream& text, const json& scan) {
  const json& rows = scan.at("rows");
  text << "pairs scanned: " << rows.size() << "\n\n";

  const std::array<std::pair<const char*, const char*>, 4> flags{{{"worst", "is_latency_opt_worst"},
                                                                  {"avg", "is_latency_opt_avg"},
                                                                  {"avgmax", "is_latency_opt_avgmax"},
                                                                  {"maxavg", "is_latency_opt_maxavg"}}};
  text << "latency-optimal pair per objective:\n";
  for (const auto& [name, key] : flags) {
    for (const json& row : rows) {
      if (row.at(key).get<bool>()) {
        text << "  " << name << ": controller " << row.at("controller").get<int>() << ", hypervisor "
             << row.at("hypervisor").get<int>() << " (" << name << " = "
             << format_double(row.at(name == std::string("avgmax")   ? "avg_max"
                                     : name == std::string("maxavg") ? "max_avg"
                                                                     : name)
                                  .get<double>())
             << " ms)\n";
        break;
      }
    }
  }

  for (const json& row : rows) {
    if (row.at("is_reduction_max").get<bool>()) {
      text << "reduction-maximal pair:\n  controller " << row.at("controller").get<int>() << ", hypervisor "
           << row.at("hypervisor").get<int>() << " (reduction = " << format_double(row.at("reduction").get<double>())
           << ", cs = " << row.at("cs").get<long long>() << ", cp = " << row.at("cp").get<long long>()
           << ", dptc = " << row.at("dptc").get<long long>() << ")\n";
      break;
    }
  }
}

int cmd_report(const GlobalArgs& args) {
  const auto started = Clock::now();
  const fs::path scan_path = out_path(args, "rpf_scan.json");
  if (!fs::exists(scan_path)) {
    throw ConfigError("no rpf_scan.json in '" + args.out_dir + "'; run 'rpf --scan' first");
  }
  const json scan = read_json_file(scan_path);

  std::ostringstream text;
  text << "control-plane latency vs. RPF load reduction\n";
  text << "============================================\n\n";
  report_scan_section(text, scan);

  std::vector<std::string> solve_files;
  text << "\nsolver optima (free assignment over open pairs):\n";
  bool any_solve = false;
  for (const ObjectiveKind objective : kAllObjectives) {
    const std::string name = objective_name(objective);
    const fs::path path = out_path(args, "solve_" + name + ".json");
    if (!fs::exists(path)) {
      continue;
    }
    const json solved = read_json_file(path);
    std::vector<int> controllers = solved.at("controllers").get<std::vector<int>>();
    std::vector<int> hypervisors = solved.at("hypervisors").get<std::vector<int>>();
    text << "  " << name << ": controllers {" << join_indices(controllers, ',') << "}, hypervisors {"
         << join_indices(hypervisors, ',') << "}, value "
         << format_double(solved.at("objective_value").get<double>()) << " ms\n";
    solve_files.push_back(path.filename().string());
    any_solve = true;
  }
  if (!any_solve) {
    text << "  (no solve_<objective>.json files in the output directory)\n";
  }

  text << "\nnode index to label:\n";
  for (const json& node : scan.at("nodes")) {
    text << "  " << node.at("index").get<int>() << " = " << node.at("label").get<std::string>() << "\n";
  }

  const bool observed = scan.at("tradeoff_observed").get<bool>();
  text << "\nverdict: ";
  if (scan.at("rows").size() <= 1) {
    text << "no trade-off possible (a single candidate pair)\n";
  } else if (observed) {
    text << "trade-off observed; the pair with the highest load reduction is not latency-optimal\n";
  } else {
    text << "no trade-off observed; one pair is best on every axis\n";
  }
  emit(args, "report.txt", text.str());

  json extra{{"scan_file", scan_path.filename().string()},
             {"solve_files", solve_files},
             {"tradeoff_observed", observed}};
  write_manifest(args, "report", started, std::move(extra));
  return 0;
}

int dispatch(CLI::App& app, const GlobalArgs& args, const std::string& objective_arg, bool scan,
             const std::optional<int>& controller, const std::optional<int>& hypervisor, int iterations) {
  const CLI::App* solve_cmd = app.get_subcommand("solve");
  const CLI::App* rpf_cmd = app.get_subcommand("rpf");
  const CLI::App* converge_cmd = app.get_subcommand("converge");
  const CLI::App* report_cmd = app.get_subcommand("report");

  const bool needs_inputs = !report_cmd->parsed();
  if (needs_inputs && args.topology_path.empty()) {
    throw ConfigError("--topology is required");
  }
  if (needs_inputs && args.scenario_path.empty()) {
    throw ConfigError("--scenario is required");
  }
  if (args.out_dir.empty()) {
    throw ConfigError("--out is required");
  }
  if (args.threads < 0) {
    throw ConfigError("--threads cannot be negative");
  }

  if (solve_cmd->parsed()) {
    return cmd_solve(args, objective_arg);
  }
  if (rpf_cmd->parsed()) {
    return cmd_rpf(args, scan, controller, hypervisor);
  }
  if (converge_cmd->parsed()) {
    return cmd_converge(args, iterations);
  }
  return cmd_report(args);
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Capacity:
      return 2;
    case ErrorKind::Io:
      return 3;
    default:
      return 1;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"joint controller/hypervisor placement and reverse path-flow analysis"};
  app.require_subcommand(1);

  GlobalArgs globals;
  app.add_option("--topology", globals.topology_path, "GraphML topology file")->type_name("FILE");
  app.add_option("--scenario", globals.scenario_path, "scenario config file")->type_name("FILE");
  app.add_option("--out", globals.out_dir, "output directory")->type_name("DIR");
  app.add_flag("--quiet", globals.quiet, "suppress progress lines on stdout");
  app.add_option("--threads", globals.threads, "worker threads (0 = all cores; results never depend on it)");
  app.add_flag("--dump-distances", globals.dump_distances, "also write the all-pairs latency matrix as CSV");

  std::string objective_arg = "all";
  CLI::App* solve_cmd = app.add_subcommand("solve", "place controllers and hypervisors optimally");
  solve_cmd->fallthrough();
  solve_cmd->add_option("--objective", objective_arg, "worst, avg, avgmax, maxavg, or all")
      ->check(CLI::IsMember({"worst", "avg", "avgmax", "maxavg", "all"}));

  bool scan = false;
  int controller_arg = -1;
  int hypervisor_arg = -1;
  CLI::App* rpf_cmd = app.add_subcommand("rpf", "classify requests and measure hypervisor load reduction");
  rpf_cmd->fallthrough();
  rpf_cmd->add_flag("--scan", scan, "evaluate every candidate controller/hypervisor pair");
  CLI::Option* controller_opt =
      rpf_cmd->add_option("--controller", controller_arg, "controller node index (single-pair mode)");
  CLI::Option* hypervisor_opt =
      rpf_cmd->add_option("--hypervisor", hypervisor_arg, "hypervisor node index (single-pair mode)");

  int iterations = 0;
  CLI::App* converge_cmd = app.add_subcommand("converge", "tally winning placements over regenerated scenarios");
  converge_cmd->fallthrough();
  converge_cmd->add_option("--iterations", iterations, "number of scenario regenerations")->required();

  CLI::App* report_cmd = app.add_subcommand("report", "summarize solver and scan outputs in one text file");
  report_cmd->fallthrough();
  app.set_version_flag("--version", kToolVersion);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::CallForVersion& version) {
    return app.exit(version);
  } catch (const CLI::ParseError& parse_error) {
    std::cerr << "error[config]: " << parse_error.what() << "\n\n" << app.help() << std::flush;
    return 1;
  }

  try {
    std::optional<int> controller;
    std::optional<int> hypervisor;
    if (controller_opt->count() > 0) {
      controller = controller_arg;
    }
    if (hypervisor_opt->count() > 0) {
      hypervisor = hypervisor_arg;
    }
    return dispatch(app, globals, objective_arg, scan, controller, hypervisor, iterations);
  } catch (const Error& error) {
    std::cerr << "error[" << error_kind_tag(error.kind()) << "]: " << error.what() << "\n";
    if (error.kind() == ErrorKind::Config) {
      std::cerr << "\n" << app.help() << std::flush;
    }
    return exit_code_for(error.kind());
  } catch (const std::exception& unexpected) {
    std::cerr << "error[internal]: " << unexpected.what() << "\n";
    return 1;
  }
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int index = 1; index < argc; ++index) {
    args.emplace_back(argv[index]);
  }
  return run_cli(args);
}

}  // namespace opjhcpp
