#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "opjhcpp/errors.hpp"
#include "opjhcpp/vsdn.hpp"
#include "support/fixtures.hpp"

using namespace opjhcpp;

TEST_CASE("SplitMix64 reproduces the published reference stream") {
  SplitMix64 zero(0);
  CHECK(zero.next() == 0xE220A8397B1DCDAFULL);
  CHECK(zero.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(zero.next() == 0x06C45D188009454FULL);

  SplitMix64 one(1);
  CHECK(one.next() == 0x910A2DEC89025CC1ULL);
  CHECK(one.next() == 0xBEEB8DA1658EEC67ULL);

  SplitMix64 big(1234567);
  CHECK(big.next() == 0x599ED017FB08FC85ULL);
  CHECK(big.next() == 0x2C73F08458540FA5ULL);
}

TEST_CASE("bounded draws follow the multiply-shift rule") {
  SplitMix64 rng(42);
  const std::vector<std::uint64_t> expected = {7, 1, 2, 3, 0};
  for (const std::uint64_t want : expected) {
    CHECK(rng.next_below(10) == want);
  }
  SplitMix64 unit(9);
  for (int draw = 0; draw < 50; ++draw) {
    CHECK(unit.next_below(1) == 0);
  }
}

namespace {

std::string valid_config_text() {
  return "num_vsdns = 3\n"
         "demand_size_min = 1\n"
         "demand_size_max = 2\n"
         "seed = 11\n"
         "hypervisor_candidates = 1,2\n"
         "controller_candidates = 0,3\n"
         "max_hypervisors = 1\n"
         "max_controllers = 1\n"
         "c_proc_ms = 1.0\n"
         "h_proc_ms = 1.0\n";
}

}  // namespace

TEST_CASE("scenario files parse with comments, defaults, and overrides") {
  std::string text = "# leading comment\n" + valid_config_text() +
                     "\n# trailing\npropagation_speed_km_per_ms = 150\n";
  const ScenarioConfig config = load_scenario(text);
  CHECK(config.num_vsdns == 3);
  CHECK(config.demand_size_min == 1);
  CHECK(config.demand_size_max == 2);
  CHECK(config.seed == 11);
  CHECK(config.hypervisor_candidates == std::vector<int>{1, 2});
  CHECK(config.controller_candidates == std::vector<int>{0, 3});
  CHECK(config.max_hypervisors == 1);
  CHECK(config.max_controllers == 1);
  CHECK(config.c_proc_ms == 1.0);
  CHECK(config.h_proc_ms == 1.0);
  CHECK(config.propagation_speed_km_per_ms == 150.0);
  CHECK_FALSE(config.default_link_latency_ms.has_value());
}

TEST_CASE("last duplicate key wins") {
  const ScenarioConfig config = load_scenario(valid_config_text() + "num_vsdns = 9\n");
  CHECK(config.num_vsdns == 9);
}

TEST_CASE("negative seeds wrap as two's complement") {
  std::string text = valid_config_text();
  text.replace(text.find("seed = 11"), 9, "seed = -5");
  CHECK(load_scenario(text).seed == 0xFFFFFFFFFFFFFFFBULL);
}

TEST_CASE("config errors name the offending key") {
  SUBCASE("unknown key") {
    try {
      load_scenario(valid_config_text() + "bogus_key = 1\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& error) {
      CHECK(std::string(error.what()).find("bogus_key") != std::string::npos);
    }
  }
  SUBCASE("missing seed") {
    std::string text = valid_config_text();
    text.erase(text.find("seed = 11"), 10);
    try {
      load_scenario(text);
      FAIL("expected ConfigError");
    } catch (const ConfigError& error) {
      CHECK(std::string(error.what()).find("seed") != std::string::npos);
    }
  }
  SUBCASE("bad ranges") {
    std::string zero_vsdns = valid_config_text();
    zero_vsdns.replace(zero_vsdns.find("num_vsdns = 3"), 13, "num_vsdns = 0");
    CHECK_THROWS_AS(load_scenario(zero_vsdns), ConfigError);

    std::string inverted = valid_config_text();
    inverted.replace(inverted.find("demand_size_max = 2"), 19, "demand_size_max = 0");
    CHECK_THROWS_AS(load_scenario(inverted), ConfigError);

    std::string dup_candidate = valid_config_text();
    dup_candidate.replace(dup_candidate.find("hypervisor_candidates = 1,2"), 27,
                          "hypervisor_candidates = 1,1");
    CHECK_THROWS_AS(load_scenario(dup_candidate), ConfigError);

    std::string negative_proc = valid_config_text();
    negative_proc.replace(negative_proc.find("c_proc_ms = 1.0"), 15, "c_proc_ms = -1.0");
    CHECK_THROWS_AS(load_scenario(negative_proc), ConfigError);
  }
}

TEST_CASE("validation against the topology") {
  const PhysicalTopology topo = fixtures::line4();
  ScenarioConfig config = load_scenario(valid_config_text());
  CHECK_NOTHROW(validate_scenario(config, topo));

  config.demand_size_max = 5;  // only 4 nodes exist
  CHECK_THROWS_AS(validate_scenario(config, topo), ConfigError);
  config.demand_size_max = 2;

  config.controller_candidates = {0, 9};
  CHECK_THROWS_AS(validate_scenario(config, topo), ConfigError);
}

TEST_CASE("generation is reproducible and well-formed") {
  const PhysicalTopology topo = fixtures::line4();
  ScenarioConfig config = load_scenario(valid_config_text());
  config.num_vsdns = 40;

  const std::vector<VsdnInstance> first = generate_vsdns(config, topo);
  const std::vector<VsdnInstance> second = generate_vsdns(config, topo);
  REQUIRE(first.size() == 40);
  for (std::size_t v = 0; v < first.size(); ++v) {
    CHECK(first[v].id == static_cast<int>(v));
    CHECK(first[v].demand_nodes == second[v].demand_nodes);
    const std::vector<int>& demands = first[v].demand_nodes;
    REQUIRE(!demands.empty());
    CHECK(demands.size() >= 1);
    CHECK(demands.size() <= 2);
    CHECK(std::is_sorted(demands.begin(), demands.end()));
    CHECK(std::adjacent_find(demands.begin(), demands.end()) == demands.end());
    for (const int node : demands) {
      CHECK(node >= 0);
      CHECK(node < topo.node_count());
    }
  }

  ScenarioConfig other_seed = config;
  other_seed.seed = config.seed + 1;
  CHECK(generate_vsdns(other_seed, topo) != first);
}

TEST_CASE("full-range sizes force the complete node set") {
  const PhysicalTopology topo = fixtures::line4();
  ScenarioConfig config = load_scenario(valid_config_text());
  config.demand_size_min = 4;
  config.demand_size_max = 4;
  for (const VsdnInstance& vsdn : generate_vsdns(config, topo)) {
    CHECK(vsdn.demand_nodes == std::vector<int>{0, 1, 2, 3});
  }
}

TEST_CASE("single tiny vsdn is stable") {
  const PhysicalTopology topo = fixtures::line4();
  ScenarioConfig config = load_scenario(valid_config_text());
  config.num_vsdns = 1;
  config.demand_size_min = 1;
  config.demand_size_max = 1;
  const std::vector<VsdnInstance> once = generate_vsdns(config, topo);
  REQUIRE(once.size() == 1);
  REQUIRE(once[0].demand_nodes.size() == 1);
  CHECK(generate_vsdns(config, topo) == once);
}
