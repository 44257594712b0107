#pragma once

#include <cstdint>
#include <vector>

#include "lifeaup/board.hpp"
#include "lifeaup/ca.hpp"

namespace lifeaup {

inline constexpr double kUnmatchedPenalty = 1.0;

/// Life cells of one color on a torus of known size. Coordinates are
/// in-bounds and unique.
class CellConfiguration {
 public:
  CellConfiguration(int width, int height, std::vector<Coord> cells = {});

  static CellConfiguration of_color(const Board& board, CellColor color);

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<Coord>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }

  friend bool operator==(const CellConfiguration&, const CellConfiguration&) = default;

 private:
  int width_;
  int height_;
  std::vector<Coord> cells_;  // sorted
};

struct MatchedPair {
  Coord reference;
  Coord actual;
  int distance;
};

struct SideEffectReport {
  double score = 0.0;
  std::vector<MatchedPair> matched;
  int unmatched_reference = 0;
  int unmatched_actual = 0;
};

/// Wasserstein-1 distance with unit masses, torus-Manhattan ground cost and
/// a per-cell penalty for mass created or destroyed, solved exactly as a
/// min-cost flow. A pair is only worth matching when its distance is at
/// most twice the penalty.
SideEffectReport side_effect_score(const CellConfiguration& reference,
                                   const CellConfiguration& actual,
                                   int unmatched_penalty = 1);

// Board after `steps` agent-free generations under a stream derived from seed.
Board counterfactual_rollout(const Board& initial, int steps, std::uint64_t seed,
                             double spawn_probability = kDefaultSpawnProbability);

// Side-effect score on green cells: counterfactual vs. actual final board.
double score_episode(const Board& initial, const Board& final_board, int steps, std::uint64_t seed,
                     double spawn_probability = kDefaultSpawnProbability);

// Counterfactual seed of episode `episode` under a run-level base seed.
inline std::uint64_t episode_counterfactual_seed(std::uint64_t base, std::uint64_t episode) {
  return RngStream(base).derive(episode).seed();
}

// Mean score over `samples` counterfactual seeds derived from `seed`.
double score_episode_averaged(const Board& initial, const Board& final_board, int steps,
                              std::uint64_t seed, int samples,
                              double spawn_probability = kDefaultSpawnProbability);

}  // namespace lifeaup
