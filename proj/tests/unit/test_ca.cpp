#include <chrono>

#include "doctest.h"
#include "lifeaup/board_io.hpp"
#include "lifeaup/ca.hpp"
#include "oracles.hpp"

using namespace lifeaup;

namespace {

Board with_life(int w, int h, std::initializer_list<Coord> cells, CellColor color = CellColor::Gray) {
  Board b(w, h);
  for (Coord c : cells) b.set(c, Cell::life(color));
  return b;
}

}  // namespace

TEST_CASE("neighbor counts") {
  RngStream rng(1);
  CHECK(count_live_neighbors(Board(5, 5), {2, 2}) == 0);
  const Board block = with_life(6, 6, {{2, 2}, {3, 2}, {2, 3}, {3, 3}});
  CHECK(count_live_neighbors(block, {2, 2}) == 3);

  Board full(3, 3);
  for (auto& c : full.cells()) c = Cell::life(CellColor::Gray);
  CHECK(count_live_neighbors(full, {1, 1}) == 8);
  CHECK(count_live_neighbors(full, {0, 0}) == 8);

  Board terrain(5, 5);
  terrain.set({1, 1}, Cell::tree());
  terrain.set({2, 1}, Cell::spawner());
  terrain.set({3, 1}, Cell::wall());
  terrain.set({1, 2}, Cell::crate());
  terrain.set({3, 3}, Cell::goal());
  CHECK(count_live_neighbors(terrain, {2, 2}) == 2);
}

TEST_CASE("newborn color follows the parent majority") {
  Board b = with_life(5, 5, {{1, 1}, {2, 1}}, CellColor::Green);
  b.set({3, 1}, Cell::life(CellColor::Red));
  CHECK(newborn_color(b, {2, 2}) == CellColor::Green);
  b.set({2, 1}, Cell::life(CellColor::Gray));
  CHECK(newborn_color(b, {2, 2}) == CellColor::Gray);
  b.set({1, 1}, Cell::tree());
  b.set({2, 1}, Cell::life(CellColor::Green));
  CHECK(newborn_color(b, {2, 2}) == CellColor::Green);
  b.set({1, 1}, Cell::spawner());
  b.set({2, 1}, Cell::spawner());
  CHECK(newborn_color(b, {2, 2}) == CellColor::Yellow);
}

TEST_CASE("still life and oscillator") {
  RngStream rng(3);
  const Board block = with_life(6, 6, {{2, 2}, {3, 2}, {2, 3}, {3, 3}});
  CHECK(step_board(block, std::nullopt, rng) == block);

  const Board horizontal = with_life(5, 5, {{1, 2}, {2, 2}, {3, 2}});
  const Board vertical = with_life(5, 5, {{2, 1}, {2, 2}, {2, 3}});
  CHECK(step_board(horizontal, std::nullopt, rng) == vertical);
  CHECK(step_board_n(horizontal, 2, rng) == horizontal);
}

TEST_CASE("freeze zone keeps the ring and leaves the center to the rule") {
  RngStream rng(4);
  const Board horizontal = with_life(7, 7, {{2, 3}, {3, 3}, {4, 3}});
  const Coord center{3, 4};
  const Board next = step_board(horizontal, center, rng);
  for (Coord d : kMooreOffsets) {
    const Coord c{center.x + d.x, center.y + d.y};
    CHECK(next.at(c) == horizontal.at(c));
  }
  // Births outside the ring and at the unfrozen center still happen.
  CHECK(next.at({3, 2}).kind == CellKind::Life);
  CHECK(next.at(center).kind == CellKind::Life);
}

TEST_CASE("spawner phase draws once per empty candidate") {
  Board b(5, 5);
  b.set({2, 2}, Cell::spawner());
  RngStream none(9);
  const Board unchanged = step_board(b, std::nullopt, none, 0.0);
  CHECK(none.counter() == 0);
  CHECK(unchanged.count(CellKind::Life) == 0);

  RngStream always(9);
  const Board filled = step_board(b, std::nullopt, always, 1.0);
  CHECK(always.counter() == 8);
  CHECK(filled.count(CellKind::Life, CellColor::Yellow) == 8);
}

TEST_CASE("matches the two-pass oracle on random boards") {
  RngStream rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int w = 1 + static_cast<int>(rng.uniform_int(40));
    const int h = 1 + static_cast<int>(rng.uniform_int(40));
    Board b = oracle::random_board(w, h, rng);
    for (int t = 0; t < 3; ++t) {
      const Board expected = oracle::life_step(b);
      RngStream dyn(trial);
      b = step_board(b, std::nullopt, dyn);
      REQUIRE(b == expected);
    }
  }
}
