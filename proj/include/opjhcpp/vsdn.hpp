#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opjhcpp/topology.hpp"

namespace opjhcpp {

// A tenant virtual network: the physical nodes originating control-plane
// demands.
struct VsdnInstance {
  int id = 0;
  std::vector<int> demand_nodes;  // sorted, unique, non-empty

  bool operator==(const VsdnInstance&) const = default;
};

struct ScenarioConfig {
  int num_vsdns = 0;
  int demand_size_min = 0;
  int demand_size_max = 0;
  std::uint64_t seed = 0;
  std::vector<int> hypervisor_candidates;  // H_node, sorted, unique
  std::vector<int> controller_candidates;  // C_node, sorted, unique
  int max_hypervisors = 1;                 // H_inst
  int max_controllers = 1;                 // C_inst
  double c_proc_ms = 0.0;
  double h_proc_ms = 0.0;
  double propagation_speed_km_per_ms = kDefaultPropagationSpeedKmPerMs;
  std::optional<double> default_link_latency_ms;

  ParseOptions parse_options() const {
    return ParseOptions{propagation_speed_km_per_ms, default_link_latency_ms};
  }
};

// SplitMix64 (Steele, Lea, Flood 2014). Chosen as the scenario generator
// because the algorithm is a dozen lines and trivially portable, so the
// same seed reproduces the same scenario in any implementation language.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, bound) by 128-bit multiply-shift; bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

// Parses the flat `key = value` scenario format (# comments, lists
// comma-separated). Throws ConfigError naming the offending key.
ScenarioConfig load_scenario(const std::string& file_text);

// Topology-dependent range checks: candidate indices and demand sizes
// must fit the node count. Throws ConfigError.
void validate_scenario(const ScenarioConfig& config,
                       const PhysicalTopology& topology);

// Draws num_vsdns demand sets from the seeded generator: size uniform in
// [demand_size_min, demand_size_max], nodes sampled uniformly without
// replacement, consumed sequentially by vSDN id.
std::vector<VsdnInstance> generate_vsdns(const ScenarioConfig& config,
                                         const PhysicalTopology& topology);

}  // namespace opjhcpp
