#include "lifeaup/ca.hpp"

#include <vector>

#include "lifeaup/errors.hpp"

namespace lifeaup {

int count_live_neighbors(const Board& board, Coord pos) {
  int n = 0;
  for (const Coord d : kMooreOffsets) {
    if (counts_as_alive(board.at({pos.x + d.x, pos.y + d.y}).kind)) ++n;
  }
  return n;
}

CellColor newborn_color(const Board& board, Coord pos) {
  std::array<int, 5> votes{};
  for (const Coord d : kMooreOffsets) {
    const Cell& c = board.at({pos.x + d.x, pos.y + d.y});
    if (counts_as_alive(c.kind)) ++votes[static_cast<int>(c.parent_color())];
  }
  for (int color = 1; color < 5; ++color) {
    if (votes[color] >= 2) return static_cast<CellColor>(color);
  }
  return CellColor::Gray;
}

namespace {

void life_pass(const Board& in, Board& out) {
  const int w = in.width();
  const int h = in.height();
  const auto& src = in.cells();
  auto& dst = out.cells();

  std::vector<std::uint8_t> alive(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) alive[i] = counts_as_alive(src[i].kind) ? 1 : 0;

  std::vector<int> left(w), right(w);
  for (int x = 0; x < w; ++x) {
    left[x] = (x + w - 1) % w;
    right[x] = (x + 1) % w;
  }

  for (int y = 0; y < h; ++y) {
    const std::uint8_t* up = &alive[static_cast<std::size_t>((y + h - 1) % h) * w];
    const std::uint8_t* mid = &alive[static_cast<std::size_t>(y) * w];
    const std::uint8_t* down = &alive[static_cast<std::size_t>((y + 1) % h) * w];
    const std::size_t row = static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      const CellKind kind = src[row + x].kind;
      if (kind != CellKind::Life && kind != CellKind::Empty) continue;
      const int l = left[x];
      const int r = right[x];
      const int n = up[l] + up[x] + up[r] + mid[l] + mid[r] + down[l] + down[x] + down[r];
      if (kind == CellKind::Life) {
        if (n < 2 || n > 3) dst[row + x] = Cell::empty();
      } else if (n == 3) {
        dst[row + x] = Cell::life(newborn_color(in, {x, y}));
      }
    }
  }
}

void spawner_pass(const Board& in, Board& out, RngStream& rng, double p) {
  const auto& src = in.cells();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i].kind != CellKind::Spawner) continue;
    const Coord s = in.coord(i);
    for (const Coord d : kMooreOffsets) {
      Cell& target = out.at({s.x + d.x, s.y + d.y});
      if (target.kind == CellKind::Empty && rng.uniform() < p) {
        target = Cell::life(CellColor::Yellow);
      }
    }
  }
}

}  // namespace

Board step_board(const Board& board, std::optional<Coord> frozen_center, RngStream& rng,
                 double spawn_probability) {
  if (!(spawn_probability >= 0.0 && spawn_probability <= 1.0)) {
    throw ContractError("spawn probability outside [0, 1]");
  }
  Board out = board;
  life_pass(board, out);
  if (spawn_probability > 0.0) spawner_pass(board, out, rng, spawn_probability);

  if (frozen_center) {
    const std::size_t center = board.index(*frozen_center);
    for (const Coord d : kMooreOffsets) {
      const std::size_t i = board.index({frozen_center->x + d.x, frozen_center->y + d.y});
      if (i != center) out.cells()[i] = board.cells()[i];
    }
  }
  return out;
}

Board step_board_n(const Board& board, int steps, RngStream& rng, double spawn_probability) {
  if (steps < 0) throw ContractError("negative step count");
  Board current = board;
  for (int t = 0; t < steps; ++t) current = step_board(current, std::nullopt, rng, spawn_probability);
  return current;
}

}  // namespace lifeaup
