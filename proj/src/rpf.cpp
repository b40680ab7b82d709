#include "opjhcpp/rpf.hpp"

#include <algorithm>
#include <limits>

#include "opjhcpp/errors.hpp"

namespace opjhcpp {

const char* request_outcome_name(RequestOutcome outcome) {
  switch (outcome) {
    case RequestOutcome::BlockedAtController: return "blocked";
    case RequestOutcome::ForwardedControllerToHypervisor: return "forwarded";
    case RequestOutcome::DirectToHypervisor: return "direct";
  }
  return "unknown";
}

RequestOutcome classify_request(const ShortestPathTable& table,
                                const Request& request, int controller,
                                int hypervisor, double c_proc_ms,
                                double h_proc_ms) {
  if (!(c_proc_ms >= 0.0) || !(h_proc_ms >= 0.0)) {
    throw ConfigError("processing times must be >= 0");
  }
  if (!table.passes_through(request.source, hypervisor, controller)) {
    return RequestOutcome::DirectToHypervisor;
  }
  // Blocking condition, "<=" inclusive: the controller keeps the request
  // when its own processing beats the round trip to the hypervisor plus
  // the hypervisor's processing.
  const double round_trip = 2.0 * table.dist(controller, hypervisor);
  if (c_proc_ms <= round_trip + h_proc_ms) {
    return RequestOutcome::BlockedAtController;
  }
  return RequestOutcome::ForwardedControllerToHypervisor;
}

LoadReport rpf_simulate(const ShortestPathTable& table,
                        std::span<const VsdnInstance> vsdns, int controller,
                        int hypervisor, double c_proc_ms, double h_proc_ms) {
  LoadReport report;
  report.controller = controller;
  report.hypervisor = hypervisor;
  report.per_vsdn.reserve(vsdns.size());
  for (const VsdnInstance& vsdn : vsdns) {
    VsdnLoad load;
    load.vsdn_id = vsdn.id;
    for (int source : vsdn.demand_nodes) {
      switch (classify_request(table, Request{vsdn.id, source}, controller,
                               hypervisor, c_proc_ms, h_proc_ms)) {
        case RequestOutcome::BlockedAtController: ++load.cs; break;
        case RequestOutcome::ForwardedControllerToHypervisor: ++load.cp; break;
        case RequestOutcome::DirectToHypervisor: ++load.dptc; break;
      }
    }
    report.cs += load.cs;
    report.cp += load.cp;
    report.dptc += load.dptc;
    report.per_vsdn.push_back(load);
  }
  if (report.total() == 0) {
    throw DegenerateError("no requests to classify; reduction undefined");
  }
  report.reduction =
      static_cast<double>(report.cs) / static_cast<double>(report.total());
  return report;
}

bool ScanRow::latency_opt(ObjectiveKind kind) const {
  switch (kind) {
    case ObjectiveKind::WorstCase: return latency_opt_worst;
    case ObjectiveKind::MinAverage: return latency_opt_avg;
    case ObjectiveKind::AvgMax: return latency_opt_avgmax;
    case ObjectiveKind::MaxAvg: return latency_opt_maxavg;
  }
  return false;
}

std::vector<ScanRow> tradeoff_scan(const ShortestPathTable& table,
                                   std::span<const VsdnInstance> vsdns,
                                   const std::vector<int>& c_candidates,
                                   const std::vector<int>& h_candidates,
                                   const CostTensor& costs, double c_proc_ms,
                                   double h_proc_ms) {
  std::vector<int> controllers = c_candidates;
  std::vector<int> hypervisors = h_candidates;
  std::sort(controllers.begin(), controllers.end());
  std::sort(hypervisors.begin(), hypervisors.end());

  std::vector<ScanRow> rows;
  rows.reserve(controllers.size() * hypervisors.size());
  for (int c : controllers) {
    for (int h : hypervisors) {
      ScanRow row;
      row.controller = c;
      row.hypervisor = h;
      // Latency metrics under the forced single-pair assignment.
      Assignment forced;
      forced.choice.resize(vsdns.size());
      for (std::size_t v = 0; v < vsdns.size(); ++v) {
        forced.choice[v].assign(vsdns[v].demand_nodes.size(), {h, c});
      }
      row.metrics = evaluate_metrics(forced, costs, vsdns);
      row.load = rpf_simulate(table, vsdns, c, h, c_proc_ms, h_proc_ms);
      rows.push_back(std::move(row));
    }
  }

  // First winner on ties, scan order.
  for (ObjectiveKind kind : kAllObjectives) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].metrics.value(kind) < rows[best].metrics.value(kind)) {
        best = i;
      }
    }
    switch (kind) {
      case ObjectiveKind::WorstCase: rows[best].latency_opt_worst = true; break;
      case ObjectiveKind::MinAverage: rows[best].latency_opt_avg = true; break;
      case ObjectiveKind::AvgMax: rows[best].latency_opt_avgmax = true; break;
      case ObjectiveKind::MaxAvg: rows[best].latency_opt_maxavg = true; break;
    }
  }
  std::size_t best_reduction = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].load.reduction > rows[best_reduction].load.reduction) {
      best_reduction = i;
    }
  }
  rows[best_reduction].reduction_max = true;
  return rows;
}

bool tradeoff_observed(std::span<const ScanRow> rows) {
  if (rows.empty()) {
    throw DegenerateError("empty trade-off scan");
  }
  const ScanRow* reduction_row = nullptr;
  for (const ScanRow& row : rows) {
    if (row.reduction_max) {
      reduction_row = &row;
      break;
    }
  }
  if (reduction_row == nullptr) {
    throw DegenerateError("scan rows carry no reduction_max flag");
  }
  for (ObjectiveKind kind : kAllObjectives) {
    for (const ScanRow& row : rows) {
      if (!row.latency_opt(kind)) continue;
      if (row.controller != reduction_row->controller ||
          row.hypervisor != reduction_row->hypervisor) {
        return true;
      }
      break;
    }
  }
  return false;
}

}  // namespace opjhcpp
