#include "doctest.h"
#include "lifeaup/board_io.hpp"
#include "lifeaup/errors.hpp"
#include "oracles.hpp"

using namespace lifeaup;

TEST_CASE("board geometry") {
  Board b(4, 3);
  CHECK(b.size() == 12);
  CHECK(b.wrap({-1, -1}) == Coord{3, 2});
  CHECK(b.wrap({9, 7}) == Coord{1, 1});
  CHECK(b.coord(b.index({2, 1})) == Coord{2, 1});
  CHECK_THROWS_AS(Board(0, 3), ContractError);
  CHECK_THROWS_AS(Board(3, kMaxBoardSide + 1), ContractError);
  CHECK(torus_manhattan({0, 0}, {0, 5}, 10, 10) == 5);
  CHECK(torus_manhattan({0, 0}, {9, 9}, 10, 10) == 2);

  RngStream rng(5);
  for (int i = 0; i < 200; ++i) {
    const Coord a{static_cast<int>(rng.uniform_int(10)), static_cast<int>(rng.uniform_int(7))};
    const Coord c{static_cast<int>(rng.uniform_int(10)), static_cast<int>(rng.uniform_int(7))};
    CHECK(torus_manhattan(a, c, 10, 7) == oracle::torus_dist(a, c, 10, 7));
  }
}

TEST_CASE("shift is a torus translation") {
  RngStream rng(8);
  const Board b = oracle::random_board(6, 5, rng);
  const Board s = b.shifted(2, -1);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 6; ++x) CHECK(s.at({x + 2, y - 1}) == b.at({x, y}));
  }
  CHECK(b.shifted(6, 5) == b);
}

TEST_CASE("level format round trip") {
  const std::string text =
      "[terrain]\n"
      "#.cT\n"
      "SAgE\n"
      "arya\n"
      "[blue]\n"
      "..B.\n"
      "....\n"
      "B...\n";
  const Level level = parse_level(text);
  REQUIRE(level.agent.has_value());
  CHECK(*level.agent == Coord{1, 1});
  CHECK(level.board.at({0, 0}).kind == CellKind::Wall);
  CHECK(level.board.at({2, 0}).kind == CellKind::Crate);
  CHECK(level.board.at({3, 0}) == Cell::tree());
  CHECK(level.board.at({0, 1}).kind == CellKind::Spawner);
  CHECK(level.board.at({2, 1}) == Cell::life(CellColor::Green));
  CHECK(level.board.at({3, 1}).kind == CellKind::Goal);
  CHECK(level.board.at({1, 2}) == Cell::life(CellColor::Red));
  CHECK(level.board.at({2, 2}) == Cell::life(CellColor::Yellow));
  CHECK(level.board.blue({2, 0}));
  CHECK(level.board.blue({0, 2}));
  CHECK_FALSE(level.board.blue({1, 1}));
  CHECK(serialize_level(level) == text);
  CHECK(serialize_level(parse_level(serialize_level(level))) == text);
}

TEST_CASE("blank lines are ignored and canonical output drops an empty blue layer") {
  const Level level = parse_level("\n[terrain]\n..\n\n.A\n[blue]\n..\n..\n");
  CHECK(serialize_level(level) == "[terrain]\n..\n.A\n");
}

TEST_CASE("degenerate and malformed files") {
  const Board one = parse_board("[terrain]\n.\n");
  CHECK(one.width() == 1);
  CHECK(one.height() == 1);
  CHECK(one.at({0, 0}) == Cell::empty());

  auto error_at = [](const std::string& text, int line, int column) {
    try {
      parse_level(text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == column);
      return;
    }
    FAIL("no ParseError for: " << text);
  };
  error_at("[terrain]\n...\n.?.\n", 3, 2);
  error_at("[terrain]\n...\n..\n", 3, 3);
  error_at("...\n", 1, 1);
  error_at("[terrain]\nA.A\n", 2, 3);
  error_at("[terrain]\n..\n[blue]\n..\n..\n", 3, 1);
  error_at("[terrain]\n..\n[terrain]\n..\n", 3, 1);
}
