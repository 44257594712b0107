#include "lifeaup/min_cost_flow.hpp"

#include <functional>
#include <limits>
#include <queue>

#include "lifeaup/errors.hpp"

namespace lifeaup {

namespace {
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
}

MinCostFlow::MinCostFlow(int nodes) : adjacency_(nodes) {
  if (nodes < 2) throw ContractError("flow network needs at least two nodes");
}

int MinCostFlow::add_edge(int from, int to, std::int64_t capacity, std::int64_t cost) {
  if (from < 0 || to < 0 || from >= nodes() || to >= nodes()) throw ContractError("edge endpoint out of range");
  if (capacity < 0) throw ContractError("negative capacity");
  const int id = static_cast<int>(edges_.size());
  edges_.push_back({from, to, capacity, 0, cost});
  edges_.push_back({to, from, 0, 0, -cost});
  adjacency_[from].push_back(id);
  adjacency_[to].push_back(id + 1);
  return id;
}

MinCostFlow::Result MinCostFlow::solve(int source, int sink, std::int64_t limit) {
  const int n = nodes();
  std::vector<std::int64_t> potential(n, 0);

  // Bellman-Ford over edges with residual capacity.
  {
    std::vector<std::int64_t> dist(n, kInf);
    dist[source] = 0;
    for (int round = 0; round < n; ++round) {
      bool changed = false;
      for (const Edge& e : edges_) {
        if (e.capacity - e.flow <= 0 || dist[e.from] == kInf) continue;
        if (dist[e.from] + e.cost < dist[e.to]) {
          dist[e.to] = dist[e.from] + e.cost;
          changed = true;
        }
      }
      if (!changed) break;
    }
    for (int v = 0; v < n; ++v) potential[v] = dist[v] == kInf ? 0 : dist[v];
  }

  Result result;
  std::vector<std::int64_t> dist(n);
  std::vector<int> via(n);
  using Item = std::pair<std::int64_t, int>;
  while (result.flow < limit) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(via.begin(), via.end(), -1);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0;
    heap.emplace(0, source);
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d != dist[v]) continue;
      for (int id : adjacency_[v]) {
        const Edge& e = edges_[id];
        if (e.capacity - e.flow <= 0) continue;
        const std::int64_t nd = d + e.cost + potential[v] - potential[e.to];
        if (nd < dist[e.to]) {
          dist[e.to] = nd;
          via[e.to] = id;
          heap.emplace(nd, e.to);
        }
      }
    }
    if (dist[sink] == kInf) break;
    for (int v = 0; v < n; ++v) {
      if (dist[v] < kInf) potential[v] += dist[v];
    }

    std::int64_t push = limit - result.flow;
    for (int v = sink; v != source; v = edges_[via[v]].from) {
      const Edge& e = edges_[via[v]];
      push = std::min(push, e.capacity - e.flow);
    }
    for (int v = sink; v != source; v = edges_[via[v]].from) {
      const int id = via[v];
      edges_[id].flow += push;
      edges_[id ^ 1].flow -= push;
      result.cost += push * edges_[id].cost;
    }
    result.flow += push;
  }
  return result;
}

}  // namespace lifeaup
