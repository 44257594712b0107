#include "lifeaup/metrics.hpp"

#include <algorithm>

#include "lifeaup/errors.hpp"
#include "lifeaup/min_cost_flow.hpp"

namespace lifeaup {

CellConfiguration::CellConfiguration(int width, int height, std::vector<Coord> cells)
    : width_(width), height_(height), cells_(std::move(cells)) {
  if (width <= 0 || height <= 0) throw ContractError("configuration needs positive dimensions");
  for (Coord c : cells_) {
    if (c.x < 0 || c.y < 0 || c.x >= width || c.y >= height) {
      throw ContractError("configuration cell out of bounds");
    }
  }
  std::sort(cells_.begin(), cells_.end());
  if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end()) {
    throw ContractError("configuration has duplicate cells");
  }
}

CellConfiguration CellConfiguration::of_color(const Board& board, CellColor color) {
  std::vector<Coord> cells;
  for (std::size_t i = 0; i < board.size(); ++i) {
    const Cell& c = board.cells()[i];
    if (c.kind == CellKind::Life && c.color == color) cells.push_back(board.coord(i));
  }
  return {board.width(), board.height(), std::move(cells)};
}

SideEffectReport side_effect_score(const CellConfiguration& reference,
                                   const CellConfiguration& actual, int unmatched_penalty) {
  if (reference.width() != actual.width() || reference.height() != actual.height()) {
    throw ContractError("side_effect_score: configurations on different tori");
  }
  if (unmatched_penalty < 0) throw ContractError("unmatched penalty must be nonnegative");

  const int n = static_cast<int>(reference.size());
  const int m = static_cast<int>(actual.size());
  SideEffectReport report;
  if (n == 0 && m == 0) return report;

  // source -> reference cells and the insertion hub; actual cells and the
  // deletion hub -> sink. Every reference unit ends at an actual cell or is
  // deleted; every actual unit is fed by a reference cell or inserted.
  const int source = 0;
  const int ref0 = 1;
  const int act0 = ref0 + n;
  const int insert_hub = act0 + m;
  const int delete_hub = insert_hub + 1;
  const int sink = delete_hub + 1;
  MinCostFlow flow(sink + 1);

  std::vector<int> pair_edges;
  pair_edges.reserve(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i) {
    flow.add_edge(source, ref0 + i, 1, 0);
    flow.add_edge(ref0 + i, delete_hub, 1, unmatched_penalty);
    for (int j = 0; j < m; ++j) {
      const int d = torus_manhattan(reference.cells()[i], actual.cells()[j], reference.width(),
                                    reference.height());
      // Transport beyond twice the penalty never beats delete + insert.
      pair_edges.push_back(d <= 2 * unmatched_penalty ? flow.add_edge(ref0 + i, act0 + j, 1, d) : -1);
    }
  }
  flow.add_edge(source, insert_hub, m, 0);
  for (int j = 0; j < m; ++j) {
    flow.add_edge(insert_hub, act0 + j, 1, unmatched_penalty);
    flow.add_edge(act0 + j, sink, 1, 0);
  }
  flow.add_edge(insert_hub, delete_hub, std::min(n, m), 0);
  flow.add_edge(delete_hub, sink, n, 0);

  const auto result = flow.solve(source, sink, n + m);
  if (result.flow != n + m) throw std::logic_error("side_effect_score: flow network infeasible");

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const int id = pair_edges[static_cast<std::size_t>(i) * m + j];
      if (id >= 0 && flow.edge(id).flow == 1) {
        report.matched.push_back(
            {reference.cells()[i], actual.cells()[j], static_cast<int>(flow.edge(id).cost)});
      }
    }
  }
  const int matched = static_cast<int>(report.matched.size());
  report.unmatched_reference = n - matched;
  report.unmatched_actual = m - matched;
  report.score = static_cast<double>(result.cost);
  return report;
}

Board counterfactual_rollout(const Board& initial, int steps, std::uint64_t seed,
                             double spawn_probability) {
  RngStream rng = RngStream(seed).derive(rng_tag::kCounterfactual);
  return step_board_n(initial, steps, rng, spawn_probability);
}

double score_episode(const Board& initial, const Board& final_board, int steps, std::uint64_t seed,
                     double spawn_probability) {
  const Board reference = counterfactual_rollout(initial, steps, seed, spawn_probability);
  return side_effect_score(CellConfiguration::of_color(reference, CellColor::Green),
                           CellConfiguration::of_color(final_board, CellColor::Green))
      .score;
}

double score_episode_averaged(const Board& initial, const Board& final_board, int steps,
                              std::uint64_t seed, int samples, double spawn_probability) {
  if (samples < 1) throw ContractError("need at least one counterfactual sample");
  double total = 0.0;
  for (int k = 0; k < samples; ++k) {
    const std::uint64_t s = RngStream(seed).derive(static_cast<std::uint64_t>(k)).next_u64();
    total += score_episode(initial, final_board, steps, s, spawn_probability);
  }
  return total / samples;
}

}  // namespace lifeaup
