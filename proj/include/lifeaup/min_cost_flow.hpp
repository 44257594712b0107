#pragma once

#include <cstdint>
#include <vector>

namespace lifeaup {

/// Successive-shortest-path min-cost flow on integer costs.
///
/// Potentials start from Bellman-Ford (edge costs may be negative, cycles may
/// not), then each augmentation runs Dijkstra on reduced costs. Exact for
/// integer data.
class MinCostFlow {
 public:
  struct Edge {
    int from;
    int to;
    std::int64_t capacity;
    std::int64_t flow;
    std::int64_t cost;
  };

  explicit MinCostFlow(int nodes);

  // Returns the id of the forward edge; its residual twin is id ^ 1.
  int add_edge(int from, int to, std::int64_t capacity, std::int64_t cost);

  struct Result {
    std::int64_t flow = 0;
    std::int64_t cost = 0;
  };

  // Pushes up to `limit` units from source to sink at minimum cost.
  Result solve(int source, int sink, std::int64_t limit);

  const Edge& edge(int id) const { return edges_[id]; }
  int nodes() const { return static_cast<int>(adjacency_.size()); }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

}  // namespace lifeaup
