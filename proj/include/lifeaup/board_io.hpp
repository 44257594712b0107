#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "lifeaup/board.hpp"

namespace lifeaup {

// A board file: terrain, optional blue layer and the optional agent start.
struct Level {
  Board board;
  std::optional<Coord> agent;
};

/// Parses the text board format.
///
///     [terrain]
///     #....
///     .A.gg
///     [blue]
///     ..BB.
///
/// Terrain glyphs: `.` Empty, `#` Wall, `c` Crate, `T` Tree, `S` Spawner,
/// `E` Goal, `a`/`g`/`r`/`y` Gray/Green/Red/Yellow Life, `A` agent start
/// (Empty underneath). The `[blue]` section uses `.` and `B`; when absent the
/// mask is all false. Blank lines are ignored. Errors carry 1-based
/// line/column positions.
Level parse_level(std::string_view text);
Board parse_board(std::string_view text);

// Canonical text: `[terrain]` rows, then `[blue]` rows only if any tile is blue.
std::string serialize_board(const Board& board, std::optional<Coord> agent = std::nullopt);
std::string serialize_level(const Level& level);

char cell_glyph(const Cell& cell);

Level read_level_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

}  // namespace lifeaup
