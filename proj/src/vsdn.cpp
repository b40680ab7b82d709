#include "opjhcpp/vsdn.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "opjhcpp/errors.hpp"

namespace opjhcpp {

namespace {

std::string trim(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return text.substr(begin, end - begin);
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t consumed = 0;
    long long parsed = std::stoll(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
  }
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  try {
    std::size_t consumed = 0;
    if (!value.empty() && value[0] == '-') {
      // Negative seeds are accepted and reinterpreted as their two's
      // complement 64-bit pattern.
      long long parsed = std::stoll(value, &consumed);
      if (consumed != value.size()) throw std::invalid_argument(value);
      return static_cast<std::uint64_t>(parsed);
    }
    std::uint64_t parsed = std::stoull(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a 64-bit integer, got '" +
                      value + "'");
  }
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t consumed = 0;
    double parsed = std::stod(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + value + "'");
  }
}

std::vector<int> parse_index_list(const std::string& key,
                                  const std::string& value) {
  std::vector<int> indices;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (item.empty()) {
      throw ConfigError("key '" + key + "': empty list element");
    }
    long long parsed = parse_int(key, item);
    if (parsed < 0) {
      throw ConfigError("key '" + key + "': negative node index " + item);
    }
    indices.push_back(static_cast<int>(parsed));
  }
  if (indices.empty()) {
    throw ConfigError("key '" + key + "': list must not be empty");
  }
  std::set<int> unique(indices.begin(), indices.end());
  if (unique.size() != indices.size()) {
    throw ConfigError("key '" + key + "': duplicate node index in set");
  }
  return std::vector<int>(unique.begin(), unique.end());
}

const std::set<std::string> kRequiredKeys = {
    "num_vsdns",       "demand_size_min",       "demand_size_max",
    "seed",            "hypervisor_candidates", "controller_candidates",
    "max_hypervisors", "max_controllers",       "c_proc_ms",
    "h_proc_ms",
};

const std::set<std::string> kOptionalKeys = {
    "propagation_speed_km_per_ms",
    "default_link_latency_ms",
};

}  // namespace

ScenarioConfig load_scenario(const std::string& file_text) {
  std::map<std::string, std::string> entries;
  std::stringstream stream(file_text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const std::size_t comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!kRequiredKeys.count(key) && !kOptionalKeys.count(key)) {
      throw ConfigError("unknown key '" + key + "'");
    }
    if (value.empty()) {
      throw ConfigError("key '" + key + "': empty value");
    }
    entries[key] = value;  // last occurrence wins
  }

  for (const std::string& key : kRequiredKeys) {
    if (!entries.count(key)) {
      throw ConfigError("missing required key '" + key + "'");
    }
  }

  ScenarioConfig config;
  config.num_vsdns = static_cast<int>(parse_int("num_vsdns", entries["num_vsdns"]));
  config.demand_size_min =
      static_cast<int>(parse_int("demand_size_min", entries["demand_size_min"]));
  config.demand_size_max =
      static_cast<int>(parse_int("demand_size_max", entries["demand_size_max"]));
  config.seed = parse_seed("seed", entries["seed"]);
  config.hypervisor_candidates =
      parse_index_list("hypervisor_candidates", entries["hypervisor_candidates"]);
  config.controller_candidates =
      parse_index_list("controller_candidates", entries["controller_candidates"]);
  config.max_hypervisors =
      static_cast<int>(parse_int("max_hypervisors", entries["max_hypervisors"]));
  config.max_controllers =
      static_cast<int>(parse_int("max_controllers", entries["max_controllers"]));
  config.c_proc_ms = parse_real("c_proc_ms", entries["c_proc_ms"]);
  config.h_proc_ms = parse_real("h_proc_ms", entries["h_proc_ms"]);
  if (entries.count("propagation_speed_km_per_ms")) {
    config.propagation_speed_km_per_ms = parse_real(
        "propagation_speed_km_per_ms", entries["propagation_speed_km_per_ms"]);
  }
  if (entries.count("default_link_latency_ms")) {
    config.default_link_latency_ms =
        parse_real("default_link_latency_ms", entries["default_link_latency_ms"]);
  }

  if (config.num_vsdns < 1) {
    throw ConfigError("key 'num_vsdns': must be >= 1");
  }
  if (config.demand_size_min < 1) {
    throw ConfigError("key 'demand_size_min': must be >= 1");
  }
  if (config.demand_size_max < config.demand_size_min) {
    throw ConfigError("key 'demand_size_max': must be >= demand_size_min");
  }
  if (config.max_hypervisors < 1) {
    throw ConfigError("key 'max_hypervisors': must be >= 1");
  }
  if (config.max_controllers < 1) {
    throw ConfigError("key 'max_controllers': must be >= 1");
  }
  if (!(config.c_proc_ms >= 0.0)) {
    throw ConfigError("key 'c_proc_ms': must be >= 0");
  }
  if (!(config.h_proc_ms >= 0.0)) {
    throw ConfigError("key 'h_proc_ms': must be >= 0");
  }
  if (!(config.propagation_speed_km_per_ms > 0.0)) {
    throw ConfigError("key 'propagation_speed_km_per_ms': must be > 0");
  }
  if (config.default_link_latency_ms && !(*config.default_link_latency_ms >= 0.0)) {
    throw ConfigError("key 'default_link_latency_ms': must be >= 0");
  }
  return config;
}

void validate_scenario(const ScenarioConfig& config,
                       const PhysicalTopology& topology) {
  const int n = topology.node_count();
  if (config.demand_size_max > n) {
    throw ConfigError("key 'demand_size_max': exceeds node count " +
                      std::to_string(n));
  }
  for (int h : config.hypervisor_candidates) {
    if (h >= n) {
      throw ConfigError("key 'hypervisor_candidates': node index " +
                        std::to_string(h) + " exceeds node count " +
                        std::to_string(n));
    }
  }
  for (int c : config.controller_candidates) {
    if (c >= n) {
      throw ConfigError("key 'controller_candidates': node index " +
                        std::to_string(c) + " exceeds node count " +
                        std::to_string(n));
    }
  }
}

std::vector<VsdnInstance> generate_vsdns(const ScenarioConfig& config,
                                         const PhysicalTopology& topology) {
  validate_scenario(config, topology);
  const int n = topology.node_count();

  SplitMix64 rng(config.seed);
  std::vector<VsdnInstance> vsdns;
  vsdns.reserve(config.num_vsdns);

  std::vector<int> pool(n);
  for (int id = 0; id < config.num_vsdns; ++id) {
    const std::uint64_t span =
        static_cast<std::uint64_t>(config.demand_size_max - config.demand_size_min) + 1;
    const int size = config.demand_size_min + static_cast<int>(rng.next_below(span));

    // Partial Fisher-Yates over a fresh identity pool.
    std::iota(pool.begin(), pool.end(), 0);
    for (int k = 0; k < size; ++k) {
      const int swap_with =
          k + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - k)));
      std::swap(pool[k], pool[swap_with]);
    }
    std::vector<int> demands(pool.begin(), pool.begin() + size);
    std::sort(demands.begin(), demands.end());
    vsdns.push_back(VsdnInstance{id, std::move(demands)});
  }
  return vsdns;
}

}  // namespace opjhcpp
