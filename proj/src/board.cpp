#include "lifeaup/board.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "lifeaup/errors.hpp"

namespace lifeaup {

Board::Board(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0 || width > kMaxBoardSide || height > kMaxBoardSide) {
    throw ContractError("board dimensions " + std::to_string(width) + "x" +
                        std::to_string(height) + " outside 1..1024");
  }
  cells_.assign(static_cast<std::size_t>(width) * height, Cell::empty());
  blue_.assign(cells_.size(), 0);
}

Coord Board::wrap(Coord c) const {
  int x = c.x % width_;
  int y = c.y % height_;
  if (x < 0) x += width_;
  if (y < 0) y += height_;
  return {x, y};
}

std::size_t Board::count(CellKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [&](const Cell& c) { return c.kind == kind; }));
}

std::size_t Board::count(CellKind kind, CellColor color) const {
  return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [&](const Cell& c) {
    return c.kind == kind && c.color == color;
  }));
}

Board Board::shifted(int dx, int dy) const {
  Board out(width_, height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const Coord src{x, y};
      const Coord dst{x + dx, y + dy};
      out.set(dst, at(src));
      out.set_blue(dst, blue(src));
    }
  }
  return out;
}

int torus_manhattan(Coord a, Coord b, int width, int height) {
  const int dx = std::abs(a.x - b.x) % width;
  const int dy = std::abs(a.y - b.y) % height;
  return std::min(dx, width - dx) + std::min(dy, height - dy);
}

}  // namespace lifeaup
