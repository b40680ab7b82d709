#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "opjhcpp/errors.hpp"
#include "opjhcpp/paths.hpp"
#include "opjhcpp/topology.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace opjhcpp;

TEST_CASE("line4 distances and reconstruction") {
  const PhysicalTopology topo = fixtures::line4();
  const ShortestPathTable table = all_pairs_shortest(topo);
  CHECK(table.dist(0, 3) == 3.0);
  CHECK(table.dist(3, 0) == 3.0);
  for (int node = 0; node < 4; ++node) CHECK(table.dist(node, node) == 0.0);
  CHECK(table.path_nodes(0, 3) == std::vector<int>{0, 1, 2, 3});
  CHECK(table.path_nodes(3, 1) == std::vector<int>{3, 2, 1});
  CHECK(table.path_nodes(2, 2) == std::vector<int>{2});
}

TEST_CASE("passes_through includes endpoints") {
  const ShortestPathTable table = all_pairs_shortest(fixtures::line4());
  CHECK(table.passes_through(0, 2, 1));
  CHECK(table.passes_through(0, 2, 0));
  CHECK(table.passes_through(0, 2, 2));
  CHECK_FALSE(table.passes_through(3, 2, 0));
}

TEST_CASE("equal-cost tie goes to the smaller predecessor") {
  // 4-cycle 0-1-2-3-0 with unit links: 0->2 has two 2.0 paths; the tree
  // must route through node 1, not node 3.
  const std::vector<PhysicalLink> links = {
      {0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}};
  const PhysicalTopology topo = build_topology(4, links);
  const ShortestPathTable table = all_pairs_shortest(topo);
  CHECK(table.dist(0, 2) == 2.0);
  CHECK(table.path_nodes(0, 2) == std::vector<int>{0, 1, 2});
  CHECK(table.pred(0, 2) == 1);
}

TEST_CASE("zero-latency links keep the tree acyclic") {
  const std::vector<PhysicalLink> links = {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 0.0}};
  const PhysicalTopology topo = build_topology(3, links);
  const ShortestPathTable table = all_pairs_shortest(topo);
  for (int s = 0; s < 3; ++s) {
    for (int t = 0; t < 3; ++t) {
      const std::vector<int> path = table.path_nodes(s, t);
      REQUIRE(!path.empty());
      CHECK(path.front() == s);
      CHECK(path.back() == t);
    }
  }
}

TEST_CASE("distances match the dense relaxation oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const PhysicalTopology topo = oracles::random_topology(rng, 50, 40);
    const ShortestPathTable table = all_pairs_shortest(topo);
    const std::vector<double> expected = oracles::floyd_warshall(topo);
    const int n = topo.node_count();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        REQUIRE(std::abs(table.dist(i, j) - expected[static_cast<std::size_t>(i) * n + j]) <=
                1e-9);
      }
    }
  }
}

TEST_CASE("reconstructed paths are adjacent and sum to the distance") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const PhysicalTopology topo = oracles::random_topology(rng, 20, 15);
    const ShortestPathTable table = all_pairs_shortest(topo);
    const int n = topo.node_count();
    for (int s = 0; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        const std::vector<int> path = table.path_nodes(s, t);
        REQUIRE(path.front() == s);
        REQUIRE(path.back() == t);
        double total = 0.0;
        for (std::size_t step = 0; step + 1 < path.size(); ++step) {
          double hop = -1.0;
          for (const Neighbor& neighbor : topo.adjacency[path[step]]) {
            if (neighbor.node == path[step + 1]) hop = neighbor.latency_ms;
          }
          REQUIRE(hop >= 0.0);  // consecutive nodes must be adjacent
          total += hop;
        }
        REQUIRE(std::abs(total - table.dist(s, t)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("symmetry and triangle inequality") {
  std::mt19937_64 rng(31337);
  const PhysicalTopology topo = oracles::random_topology(rng, 25, 25);
  const ShortestPathTable table = all_pairs_shortest(topo);
  const int n = topo.node_count();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CHECK(table.dist(i, j) == doctest::Approx(table.dist(j, i)).epsilon(1e-12));
      for (int k = 0; k < n; ++k) {
        CHECK(table.dist(i, j) <= table.dist(i, k) + table.dist(k, j) + 1e-9);
      }
    }
  }
}

TEST_CASE("parallel run is identical to sequential") {
  std::mt19937_64 rng(555);
  const PhysicalTopology topo = oracles::random_topology(rng, 40, 30);
  const ShortestPathTable sequential = all_pairs_shortest(topo, 1);
  const ShortestPathTable parallel = all_pairs_shortest(topo, 4);
  CHECK(sequential.dist_data() == parallel.dist_data());
  CHECK(sequential.pred_data() == parallel.pred_data());
}

TEST_CASE("repeated runs give bit-identical predecessor matrices") {
  const PhysicalTopology topo =
      parse_graphml(fixtures::slurp(fixtures::data_path("att_na.graphml")));
  const ShortestPathTable a = all_pairs_shortest(topo);
  const ShortestPathTable b = all_pairs_shortest(topo);
  CHECK(a.pred_data() == b.pred_data());
  CHECK(a.dist_data() == b.dist_data());
}
