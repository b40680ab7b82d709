#include "opjhcpp/paths.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <utility>

#include "opjhcpp/errors.hpp"
#include "parallel.hpp"

namespace opjhcpp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Single-source Dijkstra writing into row slices of the shared matrices.
// Pops are ordered by (distance, node index). An equal-cost relaxation
// may lower the predecessor index but never targets a finalized node, so
// the tree stays acyclic even across zero-latency links.
void dijkstra_from(const PhysicalTopology& topology, int source, double* dist,
                   int* pred) {
  const int n = topology.node_count();
  std::fill(dist, dist + n, kInf);
  std::fill(pred, pred + n, kNoPredecessor);
  std::vector<bool> finalized(n, false);

  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
  dist[source] = 0.0;
  queue.push({0.0, source});

  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (finalized[u]) continue;
    finalized[u] = true;
    for (const Neighbor& nb : topology.adjacency[u]) {
      const double candidate = d + nb.latency_ms;
      if (candidate < dist[nb.node]) {
        dist[nb.node] = candidate;
        pred[nb.node] = u;
        queue.push({candidate, nb.node});
      } else if (candidate == dist[nb.node] && !finalized[nb.node] &&
                 u < pred[nb.node]) {
        pred[nb.node] = u;
      }
    }
  }
}

}  // namespace

ShortestPathTable::ShortestPathTable(int node_count, std::vector<double> dist,
                                     std::vector<int> pred)
    : n_(node_count), dist_(std::move(dist)), pred_(std::move(pred)) {}

void ShortestPathTable::check_index(int v) const {
  if (v < 0 || v >= n_) {
    throw ConfigError("node index " + std::to_string(v) + " out of range [0, " +
                      std::to_string(n_) + ")");
  }
}

double ShortestPathTable::dist(int from, int to) const {
  check_index(from);
  check_index(to);
  return dist_[static_cast<std::size_t>(from) * n_ + to];
}

int ShortestPathTable::pred(int source, int node) const {
  check_index(source);
  check_index(node);
  return pred_[static_cast<std::size_t>(source) * n_ + node];
}

std::vector<int> ShortestPathTable::path_nodes(int s, int t) const {
  check_index(s);
  check_index(t);
  if (s == t) return {s};
  if (dist(s, t) == kInf) {
    throw ConnectivityError("node " + std::to_string(t) +
                            " unreachable from " + std::to_string(s));
  }
  std::vector<int> reversed;
  int cursor = t;
  while (cursor != s) {
    reversed.push_back(cursor);
    cursor = pred(s, cursor);
    if (cursor == kNoPredecessor ||
        reversed.size() > static_cast<std::size_t>(n_)) {
      throw ConnectivityError("broken predecessor chain from " +
                              std::to_string(s) + " to " + std::to_string(t));
    }
  }
  reversed.push_back(s);
  std::reverse(reversed.begin(), reversed.end());
  return reversed;
}

bool ShortestPathTable::passes_through(int s, int t, int x) const {
  check_index(x);
  const std::vector<int> path = path_nodes(s, t);
  return std::find(path.begin(), path.end(), x) != path.end();
}

ShortestPathTable all_pairs_shortest(const PhysicalTopology& topology,
                                     int threads) {
  const int n = topology.node_count();
  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<int> pred(static_cast<std::size_t>(n) * n, kNoPredecessor);

  detail::parallel_for(n, threads, [&](int source) {
    dijkstra_from(topology, source, dist.data() + static_cast<std::size_t>(source) * n,
                  pred.data() + static_cast<std::size_t>(source) * n);
  });

  for (double d : dist) {
    if (d == kInf) {
      throw ConnectivityError("topology is not connected");
    }
  }
  return ShortestPathTable(n, std::move(dist), std::move(pred));
}

}  // namespace opjhcpp
