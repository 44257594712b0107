#include "lifeaup/board_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "lifeaup/errors.hpp"

namespace lifeaup {

namespace {

struct Row {
  int line;
  std::string text;
};

std::optional<Cell> terrain_cell(char glyph) {
  switch (glyph) {
    case '.': return Cell::empty();
    case 'A': return Cell::empty();
    case '#': return Cell::wall();
    case 'c': return Cell::crate();
    case 'T': return Cell::tree();
    case 'S': return Cell::spawner();
    case 'E': return Cell::goal();
    case 'a': return Cell::life(CellColor::Gray);
    case 'g': return Cell::life(CellColor::Green);
    case 'r': return Cell::life(CellColor::Red);
    case 'y': return Cell::life(CellColor::Yellow);
    default: return std::nullopt;
  }
}

void check_rectangular(const std::vector<Row>& rows, const char* section, int header_line) {
  if (rows.empty()) throw ParseError(header_line, 1, std::string("section ") + section + " has no rows");
  const std::size_t width = rows.front().text.size();
  for (const Row& r : rows) {
    if (r.text.size() != width) {
      throw ParseError(r.line, static_cast<int>(std::min(r.text.size(), width)) + 1,
                       std::string("ragged row in ") + section + ": expected " +
                           std::to_string(width) + " glyphs, found " + std::to_string(r.text.size()));
    }
  }
}

}  // namespace

Level parse_level(std::string_view text) {
  std::vector<Row> terrain;
  std::vector<Row> blue;
  std::vector<Row>* current = nullptr;
  int terrain_header = 0;
  int blue_header = 0;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line == "[terrain]") {
      if (terrain_header != 0) throw ParseError(line_no, 1, "duplicate [terrain] section");
      terrain_header = line_no;
      current = &terrain;
    } else if (line == "[blue]") {
      if (blue_header != 0) throw ParseError(line_no, 1, "duplicate [blue] section");
      blue_header = line_no;
      current = &blue;
    } else if (line.front() == '[') {
      throw ParseError(line_no, 1, "unknown section " + line);
    } else {
      if (current == nullptr) throw ParseError(line_no, 1, "grid row before any section header");
      current->push_back({line_no, std::move(line)});
    }
    if (end == text.size()) break;
  }

  if (terrain_header == 0) throw ParseError(1, 1, "missing [terrain] section");
  check_rectangular(terrain, "[terrain]", terrain_header);
  const int height = static_cast<int>(terrain.size());
  const int width = static_cast<int>(terrain.front().text.size());
  if (width > kMaxBoardSide || height > kMaxBoardSide) {
    throw ParseError(terrain_header, 1, "board larger than 1024 cells per side");
  }

  Level level{Board(width, height), std::nullopt};
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const char glyph = terrain[y].text[x];
      const auto cell = terrain_cell(glyph);
      if (!cell) {
        throw ParseError(terrain[y].line, x + 1, std::string("unknown terrain glyph '") + glyph + "'");
      }
      if (glyph == 'A') {
        if (level.agent) throw ParseError(terrain[y].line, x + 1, "more than one agent start");
        level.agent = Coord{x, y};
      }
      level.board.set({x, y}, *cell);
    }
  }

  if (blue_header != 0) {
    check_rectangular(blue, "[blue]", blue_header);
    if (static_cast<int>(blue.size()) != height || static_cast<int>(blue.front().text.size()) != width) {
      throw ParseError(blue_header, 1, "[blue] dimensions do not match [terrain]");
    }
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const char glyph = blue[y].text[x];
        if (glyph != '.' && glyph != 'B') {
          throw ParseError(blue[y].line, x + 1, std::string("unknown blue glyph '") + glyph + "'");
        }
        level.board.set_blue({x, y}, glyph == 'B');
      }
    }
  }
  return level;
}

Board parse_board(std::string_view text) { return parse_level(text).board; }

char cell_glyph(const Cell& cell) {
  switch (cell.kind) {
    case CellKind::Empty: return '.';
    case CellKind::Wall: return '#';
    case CellKind::Crate: return 'c';
    case CellKind::Tree: return 'T';
    case CellKind::Spawner: return 'S';
    case CellKind::Goal: return 'E';
    case CellKind::Life:
      switch (cell.color) {
        case CellColor::Green: return 'g';
        case CellColor::Red: return 'r';
        case CellColor::Yellow: return 'y';
        default: return 'a';
      }
  }
  return '?';
}

std::string serialize_board(const Board& board, std::optional<Coord> agent) {
  std::string out = "[terrain]\n";
  out.reserve(out.size() + 2 * board.size() + 2 * board.height() + 16);
  const std::optional<Coord> a = agent ? std::optional<Coord>(board.wrap(*agent)) : std::nullopt;
  for (int y = 0; y < board.height(); ++y) {
    for (int x = 0; x < board.width(); ++x) {
      const Cell& c = board.at({x, y});
      out += (a && *a == Coord{x, y} && c.kind == CellKind::Empty) ? 'A' : cell_glyph(c);
    }
    out += '\n';
  }
  bool any_blue = false;
  for (auto b : board.blue_mask()) any_blue = any_blue || b != 0;
  if (any_blue) {
    out += "[blue]\n";
    for (int y = 0; y < board.height(); ++y) {
      for (int x = 0; x < board.width(); ++x) out += board.blue({x, y}) ? 'B' : '.';
      out += '\n';
    }
  }
  return out;
}

std::string serialize_level(const Level& level) { return serialize_board(level.board, level.agent); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

Level read_level_file(const std::string& path) { return parse_level(read_text_file(path)); }

}  // namespace lifeaup
