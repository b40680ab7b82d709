#include "opjhcpp/placement.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <utility>

#include "opjhcpp/errors.hpp"
#include "parallel.hpp"

namespace opjhcpp {

const char* objective_name(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::WorstCase: return "worst";
    case ObjectiveKind::MinAverage: return "avg";
    case ObjectiveKind::AvgMax: return "avgmax";
    case ObjectiveKind::MaxAvg: return "maxavg";
  }
  return "unknown";
}

std::optional<ObjectiveKind> objective_from_name(std::string_view name) {
  if (name == "worst") return ObjectiveKind::WorstCase;
  if (name == "avg") return ObjectiveKind::MinAverage;
  if (name == "avgmax") return ObjectiveKind::AvgMax;
  if (name == "maxavg") return ObjectiveKind::MaxAvg;
  return std::nullopt;
}

double MetricSet::value(ObjectiveKind kind) const {
  switch (kind) {
    case ObjectiveKind::WorstCase: return worst;
    case ObjectiveKind::MinAverage: return avg;
    case ObjectiveKind::AvgMax: return avg_max;
    case ObjectiveKind::MaxAvg: return max_avg;
  }
  return worst;
}

namespace {

std::vector<int> sorted_unique_or_throw(std::vector<int> values, int n,
                                        const char* role) {
  if (values.empty()) {
    throw ConfigError(std::string(role) + " candidate set must not be empty");
  }
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
    throw ConfigError(std::string(role) + " candidate set has duplicates");
  }
  if (values.front() < 0 || values.back() >= n) {
    throw ConfigError(std::string(role) + " candidate index out of range [0, " +
                      std::to_string(n) + ")");
  }
  return values;
}

}  // namespace

CostTensor::CostTensor(const ShortestPathTable& table,
                       std::vector<int> h_candidates,
                       std::vector<int> c_candidates)
    : n_(table.node_count()),
      h_cands_(sorted_unique_or_throw(std::move(h_candidates), n_, "hypervisor")),
      c_cands_(sorted_unique_or_throw(std::move(c_candidates), n_, "controller")),
      h_slot_(n_, -1),
      c_slot_(n_, -1) {
  for (std::size_t i = 0; i < h_cands_.size(); ++i) h_slot_[h_cands_[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < c_cands_.size(); ++i) c_slot_[c_cands_[i]] = static_cast<int>(i);

  values_.resize(static_cast<std::size_t>(n_) * h_cands_.size() * c_cands_.size());
  std::size_t cursor = 0;
  for (int d = 0; d < n_; ++d) {
    for (int h : h_cands_) {
      const double to_hypervisor = table.dist(d, h);
      for (int c : c_cands_) {
        values_[cursor++] = to_hypervisor + table.dist(h, c);
      }
    }
  }
}

double CostTensor::psi(int demand, int hypervisor, int controller) const {
  if (demand < 0 || demand >= n_) {
    throw ConfigError("demand node " + std::to_string(demand) +
                      " out of range [0, " + std::to_string(n_) + ")");
  }
  const int h = hypervisor >= 0 && hypervisor < n_ ? h_slot_[hypervisor] : -1;
  if (h < 0) {
    throw ConfigError("node " + std::to_string(hypervisor) +
                      " is not a hypervisor candidate");
  }
  const int c = controller >= 0 && controller < n_ ? c_slot_[controller] : -1;
  if (c < 0) {
    throw ConfigError("node " + std::to_string(controller) +
                      " is not a controller candidate");
  }
  return values_[(static_cast<std::size_t>(demand) * h_cands_.size() + h) *
                     c_cands_.size() +
                 c];
}

CostTensor compute_cost_tensor(const ShortestPathTable& table,
                               std::span<const VsdnInstance> vsdns,
                               const std::vector<int>& h_candidates,
                               const std::vector<int>& c_candidates) {
  for (const VsdnInstance& vsdn : vsdns) {
    if (vsdn.demand_nodes.empty()) {
      throw ConfigError("vSDN " + std::to_string(vsdn.id) +
                        " has an empty demand set");
    }
    for (int d : vsdn.demand_nodes) {
      if (d < 0 || d >= table.node_count()) {
        throw ConfigError("vSDN " + std::to_string(vsdn.id) +
                          ": demand node " + std::to_string(d) +
                          " out of range");
      }
    }
  }
  return CostTensor(table, h_candidates, c_candidates);
}

Assignment optimal_assignment(const Placement& placement,
                              const CostTensor& costs,
                              std::span<const VsdnInstance> vsdns) {
  if (placement.controllers.empty() || placement.hypervisors.empty()) {
    throw ConfigError("placement must open at least one controller and one hypervisor");
  }
  Assignment assignment;
  assignment.choice.resize(vsdns.size());
  for (std::size_t v = 0; v < vsdns.size(); ++v) {
    auto& choices = assignment.choice[v];
    choices.reserve(vsdns[v].demand_nodes.size());
    for (int d : vsdns[v].demand_nodes) {
      double best = std::numeric_limits<double>::infinity();
      std::pair<int, int> best_pair{-1, -1};
      // Candidates are sorted, so the first strict improvement scan keeps
      // the lexicographically smallest (h, c) on ties.
      for (int h : placement.hypervisors) {
        for (int c : placement.controllers) {
          const double cost = costs.psi(d, h, c);
          if (cost < best) {
            best = cost;
            best_pair = {h, c};
          }
        }
      }
      choices.push_back(best_pair);
    }
  }
  return assignment;
}

MetricSet evaluate_metrics(const Assignment& assignment,
                           const CostTensor& costs,
                           std::span<const VsdnInstance> vsdns) {
  if (assignment.choice.size() != vsdns.size()) {
    throw ConfigError("assignment does not cover the vSDN sequence");
  }
  MetricSet metrics;
  metrics.per_vsdn_worst.resize(vsdns.size(), 0.0);
  double total = 0.0;
  long total_demands = 0;
  double sum_of_worst = 0.0;
  for (std::size_t v = 0; v < vsdns.size(); ++v) {
    const auto& demands = vsdns[v].demand_nodes;
    if (assignment.choice[v].size() != demands.size()) {
      throw ConfigError("assignment does not cover all demands of vSDN " +
                        std::to_string(vsdns[v].id));
    }
    double vsdn_worst = 0.0;
    double vsdn_sum = 0.0;
    for (std::size_t k = 0; k < demands.size(); ++k) {
      const auto [h, c] = assignment.choice[v][k];
      const double latency = costs.psi(demands[k], h, c);
      vsdn_worst = std::max(vsdn_worst, latency);
      vsdn_sum += latency;
    }
    const double vsdn_avg = vsdn_sum / static_cast<double>(demands.size());
    metrics.per_vsdn_worst[v] = vsdn_worst;
    metrics.worst = std::max(metrics.worst, vsdn_worst);
    metrics.max_avg = std::max(metrics.max_avg, vsdn_avg);
    sum_of_worst += vsdn_worst;
    total += vsdn_sum;
    total_demands += static_cast<long>(demands.size());
  }
  if (total_demands == 0) {
    throw DegenerateError("no demands to evaluate");
  }
  metrics.avg = total / static_cast<double>(total_demands);
  metrics.avg_max = sum_of_worst / static_cast<double>(vsdns.size());
  return metrics;
}

namespace {

// C(n, k) saturating at the cap sentinel to avoid overflow.
std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(result) * (n - k + i) / i;
    if (wide > cap) return cap + 1;
    result = static_cast<std::uint64_t>(wide);
  }
  return result;
}

std::uint64_t subset_count(int n, int max_size, std::uint64_t cap) {
  std::uint64_t total = 0;
  for (int k = 1; k <= std::min(max_size, n); ++k) {
    total += binomial_capped(n, k, cap);
    if (total > cap) return cap + 1;
  }
  return total;
}

// All subsets of `candidates` with size in [1, max_size], in lexicographic
// order of their sorted element sequences.
void enumerate_subsets(const std::vector<int>& candidates, int max_size,
                       std::vector<std::vector<int>>& out) {
  std::vector<int> current;
  const int n = static_cast<int>(candidates.size());
  auto descend = [&](auto&& self, int from) -> void {
    for (int i = from; i < n; ++i) {
      current.push_back(candidates[i]);
      out.push_back(current);
      if (static_cast<int>(current.size()) < max_size) {
        self(self, i + 1);
      }
      current.pop_back();
    }
  };
  descend(descend, 0);
}

}  // namespace

std::uint64_t count_placements(const ScenarioConfig& config) {
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max() / 2;
  const std::uint64_t controllers =
      subset_count(static_cast<int>(config.controller_candidates.size()),
                   config.max_controllers, cap);
  const std::uint64_t hypervisors =
      subset_count(static_cast<int>(config.hypervisor_candidates.size()),
                   config.max_hypervisors, cap);
  const unsigned __int128 product =
      static_cast<unsigned __int128>(controllers) * hypervisors;
  if (product > cap) return cap;
  return static_cast<std::uint64_t>(product);
}

std::vector<Placement> enumerate_placements(const ScenarioConfig& config,
                                            std::uint64_t cap) {
  const std::uint64_t count = count_placements(config);
  if (count > cap) {
    throw CapacityError(
        "placement search space has " + std::to_string(count) +
        " entries, above the cap of " + std::to_string(cap) +
        "; shrink the candidate sets or instance limits");
  }

  std::vector<std::vector<int>> controller_sets;
  std::vector<std::vector<int>> hypervisor_sets;
  enumerate_subsets(config.controller_candidates, config.max_controllers,
                    controller_sets);
  enumerate_subsets(config.hypervisor_candidates, config.max_hypervisors,
                    hypervisor_sets);

  std::vector<Placement> placements;
  placements.reserve(controller_sets.size() * hypervisor_sets.size());
  for (const auto& controllers : controller_sets) {
    for (const auto& hypervisors : hypervisor_sets) {
      placements.push_back(Placement{controllers, hypervisors});
    }
  }
  return placements;
}

PlacementResult solve(ObjectiveKind objective, const ScenarioConfig& config,
                      const CostTensor& costs,
                      std::span<const VsdnInstance> vsdns, int threads,
                      std::uint64_t cap) {
  for (int h : config.hypervisor_candidates) {
    if (std::find(costs.hypervisor_candidates().begin(),
                  costs.hypervisor_candidates().end(),
                  h) == costs.hypervisor_candidates().end()) {
      throw ConfigError("cost tensor does not cover hypervisor candidate " +
                        std::to_string(h));
    }
  }
  for (int c : config.controller_candidates) {
    if (std::find(costs.controller_candidates().begin(),
                  costs.controller_candidates().end(),
                  c) == costs.controller_candidates().end()) {
      throw ConfigError("cost tensor does not cover controller candidate " +
                        std::to_string(c));
    }
  }

  const std::vector<Placement> placements = enumerate_placements(config, cap);
  std::vector<double> values(placements.size());
  detail::parallel_for(
      static_cast<int>(placements.size()), threads, [&](int i) {
        const Assignment assignment =
            optimal_assignment(placements[i], costs, vsdns);
        values[i] = evaluate_metrics(assignment, costs, vsdns).value(objective);
      });

  // Sequential argmin so ties always resolve to the earliest placement,
  // independent of the thread count.
  std::size_t best = 0;
  for (std::size_t i = 1; i < placements.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }

  PlacementResult result;
  result.placement = placements[best];
  result.assignment = optimal_assignment(result.placement, costs, vsdns);
  result.objective = objective;
  result.metrics = evaluate_metrics(result.assignment, costs, vsdns);
  result.objective_value = result.metrics.value(objective);
  return result;
}

ConvergenceTable converge_candidates(const ScenarioConfig& base_config,
                                     const PhysicalTopology& topology,
                                     int iterations, int threads) {
  if (iterations < 1) {
    throw ConfigError("iterations must be >= 1");
  }
  validate_scenario(base_config, topology);

  const ShortestPathTable table = all_pairs_shortest(topology, threads);
  // psi does not depend on the drawn vSDNs, so one tensor serves every
  // iteration.
  const CostTensor costs(table, base_config.hypervisor_candidates,
                         base_config.controller_candidates);

  std::array<std::map<std::pair<std::vector<int>, std::vector<int>>, int>, 4>
      tallies;
  for (int iteration = 0; iteration < iterations; ++iteration) {
    ScenarioConfig config = base_config;
    config.seed = base_config.seed + static_cast<std::uint64_t>(iteration);
    const std::vector<VsdnInstance> vsdns = generate_vsdns(config, topology);
    for (std::size_t k = 0; k < kAllObjectives.size(); ++k) {
      const PlacementResult result =
          solve(kAllObjectives[k], config, costs, vsdns, threads);
      tallies[k][{result.placement.controllers, result.placement.hypervisors}]++;
    }
  }

  ConvergenceTable table_out;
  table_out.iterations = iterations;
  for (std::size_t k = 0; k < kAllObjectives.size(); ++k) {
    auto& rows = table_out.per_objective[k];
    for (const auto& [key, wins] : tallies[k]) {
      rows.push_back(PlacementWins{Placement{key.first, key.second}, wins});
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const PlacementWins& a, const PlacementWins& b) {
                       return a.wins > b.wins;
                     });
  }
  return table_out;
}

}  // namespace opjhcpp
