#pragma once

#include <cstdint>
#include <vector>

namespace lifeaup {

enum class CellKind : std::uint8_t { Empty, Life, Wall, Crate, Tree, Spawner, Goal };
enum class CellColor : std::uint8_t { None, Gray, Green, Red, Yellow };

inline constexpr int kMaxBoardSide = 1024;

// Trees and spawners are permanent but count as alive for neighbor counting.
constexpr bool counts_as_alive(CellKind kind) {
  return kind == CellKind::Life || kind == CellKind::Tree || kind == CellKind::Spawner;
}

struct Cell {
  CellKind kind = CellKind::Empty;
  CellColor color = CellColor::None;

  static constexpr Cell empty() { return {}; }
  static constexpr Cell life(CellColor c) { return {CellKind::Life, c}; }
  static constexpr Cell wall() { return {CellKind::Wall, CellColor::None}; }
  static constexpr Cell crate() { return {CellKind::Crate, CellColor::None}; }
  static constexpr Cell tree() { return {CellKind::Tree, CellColor::Green}; }
  static constexpr Cell spawner() { return {CellKind::Spawner, CellColor::None}; }
  static constexpr Cell goal() { return {CellKind::Goal, CellColor::None}; }

  // Color a cell contributes when it is a parent of a newborn.
  constexpr CellColor parent_color() const {
    switch (kind) {
      case CellKind::Tree: return CellColor::Green;
      case CellKind::Spawner: return CellColor::Yellow;
      default: return color;
    }
  }

  friend constexpr bool operator==(const Cell&, const Cell&) = default;
};

struct Coord {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(const Coord&, const Coord&) = default;
  friend constexpr auto operator<=>(const Coord&, const Coord&) = default;
};

/// Torus grid of typed, colored cells plus the blue goal-region mask.
class Board {
 public:
  Board(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return cells_.size(); }

  // Wraps arbitrary integer coordinates onto the torus.
  Coord wrap(Coord c) const;
  std::size_t index(Coord c) const {
    const Coord w = wrap(c);
    return static_cast<std::size_t>(w.y) * width_ + w.x;
  }
  Coord coord(std::size_t index) const {
    return {static_cast<int>(index % width_), static_cast<int>(index / width_)};
  }

  const Cell& at(Coord c) const { return cells_[index(c)]; }
  Cell& at(Coord c) { return cells_[index(c)]; }
  void set(Coord c, Cell cell) { cells_[index(c)] = cell; }

  bool blue(Coord c) const { return blue_[index(c)] != 0; }
  void set_blue(Coord c, bool value) { blue_[index(c)] = value ? 1 : 0; }

  const std::vector<Cell>& cells() const { return cells_; }
  std::vector<Cell>& cells() { return cells_; }
  const std::vector<std::uint8_t>& blue_mask() const { return blue_; }

  std::size_t count(CellKind kind) const;
  std::size_t count(CellKind kind, CellColor color) const;

  // Returns a copy translated by (dx, dy) on the torus.
  Board shifted(int dx, int dy) const;

  friend bool operator==(const Board&, const Board&) = default;

 private:
  int width_;
  int height_;
  std::vector<Cell> cells_;
  std::vector<std::uint8_t> blue_;
};

// Manhattan distance on a width x height torus.
int torus_manhattan(Coord a, Coord b, int width, int height);

}  // namespace lifeaup
