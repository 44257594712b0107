#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "lifeaup/env.hpp"

namespace lifeaup {

enum class StillLife : std::uint8_t { Block, Beehive, Loaf, Boat, Tub };

inline constexpr std::array<StillLife, 5> kStillLifes = {StillLife::Block, StillLife::Beehive,
                                                          StillLife::Loaf, StillLife::Boat,
                                                          StillLife::Tub};

std::string_view still_life_name(StillLife pattern);

// Cell offsets of a pattern in its canonical orientation, anchored at (0, 0).
std::span<const Coord> still_life_cells(StillLife pattern);

// Pattern cells after one of the 8 dihedral transforms, normalized so the
// minimum x and y are 0.
std::vector<Coord> oriented_cells(StillLife pattern, int symmetry);

struct GenParams {
  int width = 13;
  int height = 13;
  double wall_density = 0.05;
  double crate_density = 0.02;
  double tree_density = 0.01;
  int green_patterns = 2;
  int red_patterns = 0;
  int blue_width = 3;
  int blue_height = 3;
  int spawners = 0;
  int max_retries = 200;
};

// Task defaults for a width x height board.
GenParams default_gen_params(TaskKind task, int width = 13, int height = 13);

/// Generates a solvable level for `task`.
///
/// Green (and, for prune, red) patterns come from the still-life library and
/// are isolated so that they persist untouched. Retries with the same stream
/// until the goal is reachable from the start through Empty cells; throws
/// GenerationError carrying the stream seed when the retry budget runs out.
EnvState generate_environment(TaskKind task, const GenParams& params, const EnvRules& rules,
                              RngStream& rng);

// Shortest path length from start to goal through Empty cells (-1 if none).
int shortest_path_to_goal(const Board& board, Coord start);

}  // namespace lifeaup
