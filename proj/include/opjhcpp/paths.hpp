#pragma once

#include <vector>

#include "opjhcpp/topology.hpp"

namespace opjhcpp {

inline constexpr int kNoPredecessor = -1;

// All-pairs shortest distances plus one deterministic shortest-path tree
// per source. pred(s, v) is the node preceding v on the chosen s->v path,
// kNoPredecessor on the diagonal.
class ShortestPathTable {
 public:
  ShortestPathTable(int node_count, std::vector<double> dist,
                    std::vector<int> pred);

  int node_count() const { return n_; }
  double dist(int from, int to) const;
  int pred(int source, int node) const;

  // Node sequence from s to t inclusive; [s] when s == t.
  std::vector<int> path_nodes(int s, int t) const;

  // True iff x lies on the chosen s->t path, endpoints included.
  bool passes_through(int s, int t, int x) const;

  const std::vector<double>& dist_data() const { return dist_; }
  const std::vector<int>& pred_data() const { return pred_; }

 private:
  void check_index(int v) const;

  int n_;
  std::vector<double> dist_;  // n*n, row-major by source
  std::vector<int> pred_;    // n*n, row-major by source
};

// Dijkstra per source with a deterministic tie-break: an equal-cost path
// replaces the incumbent only when its predecessor index is strictly
// smaller. Equal-cost updates never target an already finalized node,
// which keeps the tree acyclic when zero-latency links are present.
// `threads` > 1 distributes sources across workers; the result is
// identical to the sequential run.
ShortestPathTable all_pairs_shortest(const PhysicalTopology& topology,
                                     int threads = 1);

}  // namespace opjhcpp
