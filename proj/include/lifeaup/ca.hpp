#pragma once

#include <array>
#include <optional>

#include "lifeaup/board.hpp"
#include "lifeaup/rng.hpp"

namespace lifeaup {

inline constexpr double kDefaultSpawnProbability = 0.3;

// Moore neighborhood offsets in a fixed order (row-major, center excluded).
inline constexpr std::array<Coord, 8> kMooreOffsets = {
    Coord{-1, -1}, Coord{0, -1}, Coord{1, -1}, Coord{-1, 0},
    Coord{1, 0},   Coord{-1, 1}, Coord{0, 1},  Coord{1, 1}};

// Number of Life, Tree and Spawner cells among the 8 wrapped neighbors of pos.
int count_live_neighbors(const Board& board, Coord pos);

// Color of a cell born at pos: the color shared by at least two of its three
// live parents, otherwise Gray.
CellColor newborn_color(const Board& board, Coord pos);

/// One synchronous B3/S23 generation.
///
/// Life cells survive with 2 or 3 live neighbors; Empty cells with exactly 3
/// become Life. Afterwards every Spawner turns each Empty neighbor Yellow
/// with probability `spawn_probability`, consuming one draw from `rng` per
/// candidate cell (none at all when the probability is zero). If
/// `frozen_center` is set, the 8 cells around it are restored from the input
/// after both phases; the center itself is not frozen.
Board step_board(const Board& board, std::optional<Coord> frozen_center, RngStream& rng,
                 double spawn_probability = kDefaultSpawnProbability);

// Applies step_board `steps` times with no freeze zone.
Board step_board_n(const Board& board, int steps, RngStream& rng,
                   double spawn_probability = kDefaultSpawnProbability);

}  // namespace lifeaup
