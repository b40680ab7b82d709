#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "opjhcpp/cli.hpp"
#include "opjhcpp/errors.hpp"
#include "opjhcpp/paths.hpp"
#include "opjhcpp/placement.hpp"
#include "opjhcpp/rpf.hpp"
#include "opjhcpp/topology.hpp"
#include "opjhcpp/vsdn.hpp"

namespace py = pybind11;
using namespace opjhcpp;

namespace {

ObjectiveKind objective_or_throw(const std::string& name) {
  const std::optional<ObjectiveKind> kind = objective_from_name(name);
  if (!kind.has_value()) {
    throw ConfigError("unknown objective '" + name + "' (use worst, avg, avgmax, or maxavg)");
  }
  return *kind;
}

void translate_error(const Error& error) {
  const std::string message =
      std::string("error[") + error_kind_tag(error.kind()) + "]: " + error.what();
  switch (error.kind()) {
    case ErrorKind::Capacity:
      PyErr_SetString(PyExc_RuntimeError, message.c_str());
      break;
    case ErrorKind::Io:
      PyErr_SetString(PyExc_OSError, message.c_str());
      break;
    default:
      PyErr_SetString(PyExc_ValueError, message.c_str());
      break;
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "joint controller/hypervisor placement and reverse path-flow analysis";
  m.attr("__version__") = kToolVersion;

  py::register_exception_translator([](std::exception_ptr source) {
    try {
      if (source) {
        std::rethrow_exception(source);
      }
    } catch (const Error& error) {
      translate_error(error);
    }
  });

  py::class_<ParseOptions>(m, "ParseOptions")
      .def(py::init([](double speed, std::optional<double> fallback) {
             return ParseOptions{speed, fallback};
           }),
           py::arg("propagation_speed_km_per_ms") = kDefaultPropagationSpeedKmPerMs,
           py::arg("default_link_latency_ms") = std::nullopt)
      .def_readwrite("propagation_speed_km_per_ms", &ParseOptions::propagation_speed_km_per_ms)
      .def_readwrite("default_link_latency_ms", &ParseOptions::default_link_latency_ms);

  py::class_<PhysicalNode>(m, "PhysicalNode")
      .def_readonly("index", &PhysicalNode::index)
      .def_readonly("source_id", &PhysicalNode::source_id)
      .def_readonly("label", &PhysicalNode::label)
      .def_readonly("latitude", &PhysicalNode::latitude)
      .def_readonly("longitude", &PhysicalNode::longitude)
      .def("has_coordinates", &PhysicalNode::has_coordinates)
      .def("__repr__", [](const PhysicalNode& node) {
        return "PhysicalNode(index=" + std::to_string(node.index) + ", label='" + node.label + "')";
      });

  py::class_<PhysicalLink>(m, "PhysicalLink")
      .def_readonly("endpoint_a", &PhysicalLink::endpoint_a)
      .def_readonly("endpoint_b", &PhysicalLink::endpoint_b)
      .def_readonly("latency_ms", &PhysicalLink::latency_ms);

  py::class_<PhysicalTopology>(m, "PhysicalTopology")
      .def_readonly("nodes", &PhysicalTopology::nodes)
      .def_readonly("links", &PhysicalTopology::links)
      .def("node_count", &PhysicalTopology::node_count)
      .def("__repr__", [](const PhysicalTopology& topology) {
        return "PhysicalTopology(" + std::to_string(topology.node_count()) + " nodes, " +
               std::to_string(topology.links.size()) + " links)";
      });

  py::class_<ShortestPathTable>(m, "ShortestPathTable")
      .def("node_count", &ShortestPathTable::node_count)
      .def("dist", &ShortestPathTable::dist, py::arg("from_node"), py::arg("to_node"))
      .def("pred", &ShortestPathTable::pred, py::arg("source"), py::arg("node"))
      .def("path_nodes", &ShortestPathTable::path_nodes, py::arg("s"), py::arg("t"))
      .def("passes_through", &ShortestPathTable::passes_through, py::arg("s"), py::arg("t"),
           py::arg("x"));

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("num_vsdns", &ScenarioConfig::num_vsdns)
      .def_readwrite("demand_size_min", &ScenarioConfig::demand_size_min)
      .def_readwrite("demand_size_max", &ScenarioConfig::demand_size_max)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def_readwrite("hypervisor_candidates", &ScenarioConfig::hypervisor_candidates)
      .def_readwrite("controller_candidates", &ScenarioConfig::controller_candidates)
      .def_readwrite("max_hypervisors", &ScenarioConfig::max_hypervisors)
      .def_readwrite("max_controllers", &ScenarioConfig::max_controllers)
      .def_readwrite("c_proc_ms", &ScenarioConfig::c_proc_ms)
      .def_readwrite("h_proc_ms", &ScenarioConfig::h_proc_ms)
      .def_readwrite("propagation_speed_km_per_ms", &ScenarioConfig::propagation_speed_km_per_ms)
      .def_readwrite("default_link_latency_ms", &ScenarioConfig::default_link_latency_ms)
      .def("parse_options", &ScenarioConfig::parse_options);

  py::class_<VsdnInstance>(m, "VsdnInstance")
      .def(py::init([](int id, std::vector<int> demand_nodes) {
             return VsdnInstance{id, std::move(demand_nodes)};
           }),
           py::arg("id"), py::arg("demand_nodes"))
      .def_readonly("id", &VsdnInstance::id)
      .def_readonly("demand_nodes", &VsdnInstance::demand_nodes)
      .def("__repr__", [](const VsdnInstance& vsdn) {
        return "VsdnInstance(id=" + std::to_string(vsdn.id) + ", " +
               std::to_string(vsdn.demand_nodes.size()) + " demands)";
      });

  py::class_<CostTensor>(m, "CostTensor")
      .def("psi", &CostTensor::psi, py::arg("demand"), py::arg("hypervisor"), py::arg("controller"))
      .def_property_readonly("hypervisor_candidates", &CostTensor::hypervisor_candidates)
      .def_property_readonly("controller_candidates", &CostTensor::controller_candidates)
      .def("node_count", &CostTensor::node_count);

  py::class_<Placement>(m, "Placement")
      .def_readonly("controllers", &Placement::controllers)
      .def_readonly("hypervisors", &Placement::hypervisors)
      .def("__repr__", [](const Placement& placement) {
        std::string text = "Placement(controllers=[";
        for (std::size_t i = 0; i < placement.controllers.size(); ++i) {
          text += (i ? "," : "") + std::to_string(placement.controllers[i]);
        }
        text += "], hypervisors=[";
        for (std::size_t i = 0; i < placement.hypervisors.size(); ++i) {
          text += (i ? "," : "") + std::to_string(placement.hypervisors[i]);
        }
        return text + "])";
      });

  py::class_<Assignment>(m, "Assignment").def_readonly("choice", &Assignment::choice);

  py::class_<MetricSet>(m, "MetricSet")
      .def_readonly("worst", &MetricSet::worst)
      .def_readonly("avg", &MetricSet::avg)
      .def_readonly("avg_max", &MetricSet::avg_max)
      .def_readonly("max_avg", &MetricSet::max_avg)
      .def_readonly("per_vsdn_worst", &MetricSet::per_vsdn_worst)
      .def("value", [](const MetricSet& metrics, const std::string& objective) {
        return metrics.value(objective_or_throw(objective));
      });

  py::class_<PlacementResult>(m, "PlacementResult")
      .def_readonly("placement", &PlacementResult::placement)
      .def_readonly("assignment", &PlacementResult::assignment)
      .def_property_readonly(
          "objective", [](const PlacementResult& result) { return objective_name(result.objective); })
      .def_readonly("objective_value", &PlacementResult::objective_value)
      .def_readonly("metrics", &PlacementResult::metrics);

  py::class_<VsdnLoad>(m, "VsdnLoad")
      .def_readonly("vsdn_id", &VsdnLoad::vsdn_id)
      .def_readonly("cs", &VsdnLoad::cs)
      .def_readonly("cp", &VsdnLoad::cp)
      .def_readonly("dptc", &VsdnLoad::dptc);

  py::class_<LoadReport>(m, "LoadReport")
      .def_readonly("controller", &LoadReport::controller)
      .def_readonly("hypervisor", &LoadReport::hypervisor)
      .def_readonly("cs", &LoadReport::cs)
      .def_readonly("cp", &LoadReport::cp)
      .def_readonly("dptc", &LoadReport::dptc)
      .def_readonly("reduction", &LoadReport::reduction)
      .def_readonly("per_vsdn", &LoadReport::per_vsdn)
      .def("total", &LoadReport::total);

  py::class_<ScanRow>(m, "ScanRow")
      .def_readonly("controller", &ScanRow::controller)
      .def_readonly("hypervisor", &ScanRow::hypervisor)
      .def_readonly("metrics", &ScanRow::metrics)
      .def_readonly("load", &ScanRow::load)
      .def_readonly("latency_opt_worst", &ScanRow::latency_opt_worst)
      .def_readonly("latency_opt_avg", &ScanRow::latency_opt_avg)
      .def_readonly("latency_opt_avgmax", &ScanRow::latency_opt_avgmax)
      .def_readonly("latency_opt_maxavg", &ScanRow::latency_opt_maxavg)
      .def_readonly("reduction_max", &ScanRow::reduction_max);

  py::class_<PlacementWins>(m, "PlacementWins")
      .def_readonly("placement", &PlacementWins::placement)
      .def_readonly("wins", &PlacementWins::wins);

  py::class_<ConvergenceTable>(m, "ConvergenceTable")
      .def_readonly("iterations", &ConvergenceTable::iterations)
      .def("wins", [](const ConvergenceTable& table, const std::string& objective) {
        const ObjectiveKind kind = objective_or_throw(objective);
        for (std::size_t slot = 0; slot < kAllObjectives.size(); ++slot) {
          if (kAllObjectives[slot] == kind) {
            return table.per_objective[slot];
          }
        }
        return std::vector<PlacementWins>{};
      });

  m.def("haversine_km", &haversine_km, py::arg("lat1"), py::arg("lon1"), py::arg("lat2"),
        py::arg("lon2"));
  m.def("parse_graphml", &parse_graphml, py::arg("document_text"),
        py::arg("options") = ParseOptions{});
  m.def("load_scenario", &load_scenario, py::arg("file_text"));
  m.def("validate_scenario", &validate_scenario, py::arg("config"), py::arg("topology"));
  m.def("generate_vsdns", &generate_vsdns, py::arg("config"), py::arg("topology"));
  m.def("all_pairs_shortest", &all_pairs_shortest, py::arg("topology"), py::arg("threads") = 1);
  m.def(
      "compute_cost_tensor",
      [](const ShortestPathTable& table, const std::vector<VsdnInstance>& vsdns,
         const std::vector<int>& h_candidates, const std::vector<int>& c_candidates) {
        return compute_cost_tensor(table, vsdns, h_candidates, c_candidates);
      },
      py::arg("table"), py::arg("vsdns"), py::arg("hypervisor_candidates"),
      py::arg("controller_candidates"));
  m.def("count_placements", &count_placements, py::arg("config"));
  m.def(
      "solve",
      [](const std::string& objective, const ScenarioConfig& config, const CostTensor& costs,
         const std::vector<VsdnInstance>& vsdns, int threads, std::uint64_t cap) {
        return solve(objective_or_throw(objective), config, costs, vsdns, threads, cap);
      },
      py::arg("objective"), py::arg("config"), py::arg("costs"), py::arg("vsdns"),
      py::arg("threads") = 1, py::arg("cap") = kDefaultPlacementCap);
  m.def(
      "solve_scenario",
      [](const std::string& objective, const PhysicalTopology& topology,
         const ScenarioConfig& config, int threads) {
        validate_scenario(config, topology);
        const ShortestPathTable table = all_pairs_shortest(topology, threads);
        const std::vector<VsdnInstance> vsdns = generate_vsdns(config, topology);
        const CostTensor costs = compute_cost_tensor(table, vsdns, config.hypervisor_candidates,
                                                     config.controller_candidates);
        return solve(objective_or_throw(objective), config, costs, vsdns, threads);
      },
      py::arg("objective"), py::arg("topology"), py::arg("config"), py::arg("threads") = 1,
      "one-call solve: shortest paths, scenario generation, and placement in one step");
  m.def(
      "classify_request",
      [](const ShortestPathTable& table, int vsdn_id, int source, int controller, int hypervisor,
         double c_proc_ms, double h_proc_ms) {
        return request_outcome_name(classify_request(table, Request{vsdn_id, source}, controller,
                                                     hypervisor, c_proc_ms, h_proc_ms));
      },
      py::arg("table"), py::arg("vsdn_id"), py::arg("source"), py::arg("controller"),
      py::arg("hypervisor"), py::arg("c_proc_ms"), py::arg("h_proc_ms"));
  m.def(
      "rpf_simulate",
      [](const ShortestPathTable& table, const std::vector<VsdnInstance>& vsdns, int controller,
         int hypervisor, double c_proc_ms, double h_proc_ms) {
        return rpf_simulate(table, vsdns, controller, hypervisor, c_proc_ms, h_proc_ms);
      },
      py::arg("table"), py::arg("vsdns"), py::arg("controller"), py::arg("hypervisor"),
      py::arg("c_proc_ms"), py::arg("h_proc_ms"));
  m.def(
      "tradeoff_scan",
      [](const PhysicalTopology& topology, const ScenarioConfig& config, int threads) {
        validate_scenario(config, topology);
        const ShortestPathTable table = all_pairs_shortest(topology, threads);
        const std::vector<VsdnInstance> vsdns = generate_vsdns(config, topology);
        const CostTensor costs = compute_cost_tensor(table, vsdns, config.hypervisor_candidates,
                                                     config.controller_candidates);
        return tradeoff_scan(table, vsdns, config.controller_candidates,
                             config.hypervisor_candidates, costs, config.c_proc_ms,
                             config.h_proc_ms);
      },
      py::arg("topology"), py::arg("config"), py::arg("threads") = 1);
  m.def(
      "tradeoff_observed",
      [](const std::vector<ScanRow>& rows) { return tradeoff_observed(rows); }, py::arg("rows"));
  m.def(
      "converge_candidates",
      [](const ScenarioConfig& config, const PhysicalTopology& topology, int iterations,
         int threads) { return converge_candidates(config, topology, iterations, threads); },
      py::arg("config"), py::arg("topology"), py::arg("iterations"), py::arg("threads") = 1);
  m.def(
      "run_cli", [](const std::vector<std::string>& args) { return run_cli(args); },
      py::arg("args"), "run the command-line front end; returns the exit status");
}
