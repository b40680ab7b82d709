#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "opjhcpp/paths.hpp"
#include "opjhcpp/vsdn.hpp"

namespace opjhcpp {

enum class ObjectiveKind { WorstCase, MinAverage, AvgMax, MaxAvg };

inline constexpr std::array<ObjectiveKind, 4> kAllObjectives = {
    ObjectiveKind::WorstCase, ObjectiveKind::MinAverage, ObjectiveKind::AvgMax,
    ObjectiveKind::MaxAvg};

// CLI / report token: "worst", "avg", "avgmax", "maxavg".
const char* objective_name(ObjectiveKind kind);
std::optional<ObjectiveKind> objective_from_name(std::string_view name);

// psi(d, h, c) = dist(d, h) + dist(h, c): the latency of serving demand
// node d through hypervisor candidate h and controller candidate c. The
// tensor does not vary across vSDNs.
class CostTensor {
 public:
  CostTensor(const ShortestPathTable& table, std::vector<int> h_candidates,
             std::vector<int> c_candidates);

  double psi(int demand, int hypervisor, int controller) const;

  const std::vector<int>& hypervisor_candidates() const { return h_cands_; }
  const std::vector<int>& controller_candidates() const { return c_cands_; }
  int node_count() const { return n_; }

 private:
  int n_;
  std::vector<int> h_cands_;  // sorted
  std::vector<int> c_cands_;  // sorted
  std::vector<int> h_slot_;   // node -> index into h_cands_, -1 if absent
  std::vector<int> c_slot_;
  std::vector<double> values_;  // [demand][h_slot][c_slot]
};

CostTensor compute_cost_tensor(const ShortestPathTable& table,
                               std::span<const VsdnInstance> vsdns,
                               const std::vector<int>& h_candidates,
                               const std::vector<int>& c_candidates);

// Open facility sets: non-empty subsets of the candidate sets, within the
// instance limits.
struct Placement {
  std::vector<int> controllers;  // sorted, non-empty
  std::vector<int> hypervisors;  // sorted, non-empty

  bool operator==(const Placement&) const = default;
};

// choice[v][k] is the (hypervisor, controller) pair serving demand
// vsdns[v].demand_nodes[k].
struct Assignment {
  std::vector<std::vector<std::pair<int, int>>> choice;
};

struct MetricSet {
  double worst = 0.0;    // W: max latency over all demands
  double avg = 0.0;      // mean latency over all demands
  double avg_max = 0.0;  // mean over vSDNs of the per-vSDN worst
  double max_avg = 0.0;  // max over vSDNs of the per-vSDN mean
  std::vector<double> per_vsdn_worst;  // W_vn, aligned with the vsdn sequence

  double value(ObjectiveKind kind) const;
};

struct PlacementResult {
  Placement placement;
  Assignment assignment;
  ObjectiveKind objective = ObjectiveKind::WorstCase;
  double objective_value = 0.0;
  MetricSet metrics;
};

inline constexpr std::uint64_t kDefaultPlacementCap = 1'000'000;

// Per-demand argmin over the open (h, c) pairs; ties go to the
// lexicographically smaller pair. Optimal for all four objectives since
// each is monotone nondecreasing in every demand's latency.
Assignment optimal_assignment(const Placement& placement,
                              const CostTensor& costs,
                              std::span<const VsdnInstance> vsdns);

MetricSet evaluate_metrics(const Assignment& assignment,
                           const CostTensor& costs,
                           std::span<const VsdnInstance> vsdns);

// Number of placements enumerate_placements would yield.
std::uint64_t count_placements(const ScenarioConfig& config);

// Every controller subset of size 1..max_controllers crossed with every
// hypervisor subset of size 1..max_hypervisors, in lexicographic order
// (controllers major, hypervisors minor). Throws CapacityError when the
// count exceeds `cap`.
std::vector<Placement> enumerate_placements(
    const ScenarioConfig& config, std::uint64_t cap = kDefaultPlacementCap);

// Exact solve by exhaustive placement enumeration; ties keep the first
// placement in enumeration order. Placement evaluations may run on
// `threads` workers; results are identical to the sequential run.
PlacementResult solve(ObjectiveKind objective, const ScenarioConfig& config,
                      const CostTensor& costs,
                      std::span<const VsdnInstance> vsdns, int threads = 1,
                      std::uint64_t cap = kDefaultPlacementCap);

struct PlacementWins {
  Placement placement;
  int wins = 0;
};

struct ConvergenceTable {
  int iterations = 0;
  // Indexed like kAllObjectives; each list sorted by descending wins,
  // then enumeration order.
  std::array<std::vector<PlacementWins>, 4> per_objective;
};

// Runs `iterations` independent scenarios (seed = base seed + iteration
// index), solves all four objectives each time and tallies the winners.
ConvergenceTable converge_candidates(const ScenarioConfig& base_config,
                                     const PhysicalTopology& topology,
                                     int iterations, int threads = 1);

}  // namespace opjhcpp
