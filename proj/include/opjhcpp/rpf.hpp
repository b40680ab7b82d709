#pragma once

#include <span>
#include <vector>

#include "opjhcpp/placement.hpp"

namespace opjhcpp {

// One PACKET-IN request per demand node per vSDN.
struct Request {
  int vsdn_id = 0;
  int source = 0;
};

enum class RequestOutcome {
  BlockedAtController,
  ForwardedControllerToHypervisor,
  DirectToHypervisor,
};

const char* request_outcome_name(RequestOutcome outcome);

struct VsdnLoad {
  int vsdn_id = 0;
  long cs = 0;
  long cp = 0;
  long dptc = 0;
};

struct LoadReport {
  int controller = 0;
  int hypervisor = 0;
  long cs = 0;    // blocked at the controller
  long cp = 0;    // forwarded controller -> hypervisor
  long dptc = 0;  // reached the hypervisor without crossing the controller
  double reduction = 0.0;  // cs / (cs + cp + dptc)
  std::vector<VsdnLoad> per_vsdn;

  long total() const { return cs + cp + dptc; }
};

// Classifies one request along its shortest path source -> hypervisor.
// The controller intercepts when it lies anywhere on that path (endpoints
// included); an intercepted request is blocked when
//   c_proc_ms <= 2 * dist(controller, hypervisor) + h_proc_ms.
RequestOutcome classify_request(const ShortestPathTable& table,
                                const Request& request, int controller,
                                int hypervisor, double c_proc_ms,
                                double h_proc_ms);

// Classifies every demand of every vSDN for one (controller, hypervisor)
// pair. Throws DegenerateError when there are no requests at all.
LoadReport rpf_simulate(const ShortestPathTable& table,
                        std::span<const VsdnInstance> vsdns, int controller,
                        int hypervisor, double c_proc_ms, double h_proc_ms);

struct ScanRow {
  int controller = 0;
  int hypervisor = 0;
  MetricSet metrics;  // latencies under the forced single-pair assignment
  LoadReport load;
  bool latency_opt_worst = false;
  bool latency_opt_avg = false;
  bool latency_opt_avgmax = false;
  bool latency_opt_maxavg = false;
  bool reduction_max = false;

  bool latency_opt(ObjectiveKind kind) const;
};

// One row per (controller, hypervisor) in C x H, lexicographic order.
// Exactly one row carries each latency_opt flag and exactly one carries
// reduction_max (first winner on ties).
std::vector<ScanRow> tradeoff_scan(const ShortestPathTable& table,
                                   std::span<const VsdnInstance> vsdns,
                                   const std::vector<int>& c_candidates,
                                   const std::vector<int>& h_candidates,
                                   const CostTensor& costs, double c_proc_ms,
                                   double h_proc_ms);

// True iff the reduction-maximizing pair differs from the
// latency-minimizing pair for at least one objective.
bool tradeoff_observed(std::span<const ScanRow> rows);

}  // namespace opjhcpp
