#include "lifeaup/levelgen.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>

#include "lifeaup/errors.hpp"

namespace lifeaup {

namespace {

constexpr Coord kBlock[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
constexpr Coord kBeehive[] = {{1, 0}, {2, 0}, {0, 1}, {3, 1}, {1, 2}, {2, 2}};
constexpr Coord kLoaf[] = {{1, 0}, {2, 0}, {0, 1}, {3, 1}, {1, 2}, {3, 2}, {2, 3}};
constexpr Coord kBoat[] = {{0, 0}, {1, 0}, {0, 1}, {2, 1}, {1, 2}};
constexpr Coord kTub[] = {{1, 0}, {0, 1}, {2, 1}, {1, 2}};

int chebyshev(const Board& b, Coord p, Coord q) {
  int dx = std::abs(p.x - q.x) % b.width();
  int dy = std::abs(p.y - q.y) % b.height();
  dx = std::min(dx, b.width() - dx);
  dy = std::min(dy, b.height() - dy);
  return std::max(dx, dy);
}

// Per-attempt scratch state for one level.
class LevelBuilder {
 public:
  LevelBuilder(const GenParams& params, RngStream& rng)
      : params_(params),
        rng_(rng),
        board_(params.width, params.height),
        halo_(board_.size(), 0),
        occupied_(board_.size(), 0) {}

  bool place_pattern(CellColor color) {
    for (int tries = 0; tries < 64; ++tries) {
      const StillLife kind = kStillLifes[rng_.uniform_int(kStillLifes.size())];
      const auto cells = oriented_cells(kind, static_cast<int>(rng_.uniform_int(8)));
      const Coord anchor = random_coord();
      std::vector<Coord> placed;
      for (Coord c : cells) placed.push_back(board_.wrap({anchor.x + c.x, anchor.y + c.y}));
      if (!fits_pattern(placed)) continue;
      for (Coord p : placed) {
        board_.set(p, Cell::life(color));
        occupied_[board_.index(p)] = 1;
        pattern_cells_.push_back(p);
      }
      for (Coord p : placed) {
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) halo_[board_.index({p.x + dx, p.y + dy})] = 1;
        }
      }
      return true;
    }
    return false;
  }

  bool place_blue_region() {
    if (params_.blue_width <= 0 || params_.blue_height <= 0) return true;
    if (params_.blue_width > params_.width || params_.blue_height > params_.height) return false;
    for (int tries = 0; tries < 64; ++tries) {
      const Coord anchor = random_coord();
      bool ok = true;
      for (int dy = 0; dy < params_.blue_height && ok; ++dy) {
        for (int dx = 0; dx < params_.blue_width && ok; ++dx) {
          const std::size_t i = board_.index({anchor.x + dx, anchor.y + dy});
          ok = !occupied_[i] && !halo_[i];
        }
      }
      if (!ok) continue;
      for (int dy = 0; dy < params_.blue_height; ++dy) {
        for (int dx = 0; dx < params_.blue_width; ++dx) {
          const Coord p{anchor.x + dx, anchor.y + dy};
          board_.set_blue(p, true);
          occupied_[board_.index(p)] = 1;
        }
      }
      return true;
    }
    return false;
  }

  // Picks a free cell outside pattern halos; `min_alive_gap` additionally
  // keeps a Chebyshev distance from every live object placed so far.
  std::optional<Coord> free_cell(int min_alive_gap) {
    const int budget = 32 * static_cast<int>(board_.size());
    for (int tries = 0; tries < budget; ++tries) {
      const Coord p = random_coord();
      const std::size_t i = board_.index(p);
      if (occupied_[i] || halo_[i]) continue;
      if (min_alive_gap > 0 && too_close_to_alive(p, min_alive_gap)) continue;
      return p;
    }
    return std::nullopt;
  }

  void put(Coord p, Cell cell) {
    board_.set(p, cell);
    occupied_[board_.index(p)] = 1;
    if (counts_as_alive(cell.kind)) live_objects_.push_back(p);
  }

  void reserve(Coord p) { occupied_[board_.index(p)] = 1; }

  int density_count(double density) const {
    return static_cast<int>(std::lround(std::max(0.0, density) * static_cast<double>(board_.size())));
  }

  Board& board() { return board_; }

 private:
  Coord random_coord() {
    return {static_cast<int>(rng_.uniform_int(static_cast<std::uint64_t>(params_.width))),
            static_cast<int>(rng_.uniform_int(static_cast<std::uint64_t>(params_.height)))};
  }

  bool fits_pattern(const std::vector<Coord>& placed) const {
    // Distinct cells (the pattern must not wrap onto itself).
    for (std::size_t i = 0; i < placed.size(); ++i) {
      for (std::size_t j = i + 1; j < placed.size(); ++j) {
        if (placed[i] == placed[j]) return false;
      }
    }
    for (Coord p : placed) {
      if (occupied_[board_.index(p)]) return false;
      // No other live cell within distance 2, so no outside cell ever sees
      // more than the pattern's own neighbors.
      for (Coord q : pattern_cells_) {
        if (chebyshev(board_, p, q) <= 2) return false;
      }
      for (Coord q : live_objects_) {
        if (chebyshev(board_, p, q) <= 2) return false;
      }
    }
    // The pattern must still be a still life after wrapping on small boards.
    Board probe(board_.width(), board_.height());
    for (Coord p : placed) probe.set(p, Cell::life(CellColor::Gray));
    for (int y = 0; y < probe.height(); ++y) {
      for (int x = 0; x < probe.width(); ++x) {
        int n = 0;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if ((dx || dy) && probe.at({x + dx, y + dy}).kind == CellKind::Life) ++n;
          }
        }
        const bool alive = probe.at({x, y}).kind == CellKind::Life;
        if (alive && (n < 2 || n > 3)) return false;
        if (!alive && n == 3) return false;
      }
    }
    return true;
  }

  bool too_close_to_alive(Coord p, int gap) const {
    for (Coord q : pattern_cells_) {
      if (chebyshev(board_, p, q) < gap) return true;
    }
    for (Coord q : live_objects_) {
      if (chebyshev(board_, p, q) < gap) return true;
    }
    return false;
  }

  const GenParams& params_;
  RngStream& rng_;
  Board board_;
  std::vector<std::uint8_t> halo_;
  std::vector<std::uint8_t> occupied_;
  std::vector<Coord> pattern_cells_;
  std::vector<Coord> live_objects_;
};

}  // namespace

std::string_view still_life_name(StillLife pattern) {
  switch (pattern) {
    case StillLife::Block: return "block";
    case StillLife::Beehive: return "beehive";
    case StillLife::Loaf: return "loaf";
    case StillLife::Boat: return "boat";
    case StillLife::Tub: return "tub";
  }
  return "?";
}

std::span<const Coord> still_life_cells(StillLife pattern) {
  switch (pattern) {
    case StillLife::Block: return kBlock;
    case StillLife::Beehive: return kBeehive;
    case StillLife::Loaf: return kLoaf;
    case StillLife::Boat: return kBoat;
    case StillLife::Tub: return kTub;
  }
  return {};
}

std::vector<Coord> oriented_cells(StillLife pattern, int symmetry) {
  if (symmetry < 0 || symmetry > 7) throw ContractError("oriented_cells: symmetry must be in [0, 8)");
  std::vector<Coord> out;
  for (Coord c : still_life_cells(pattern)) {
    int x = c.x;
    int y = c.y;
    if (symmetry & 1) x = -x;
    if (symmetry & 2) y = -y;
    if (symmetry & 4) std::swap(x, y);
    out.push_back({x, y});
  }
  int min_x = out.front().x;
  int min_y = out.front().y;
  for (Coord c : out) {
    min_x = std::min(min_x, c.x);
    min_y = std::min(min_y, c.y);
  }
  for (Coord& c : out) c = {c.x - min_x, c.y - min_y};
  std::sort(out.begin(), out.end());
  return out;
}

GenParams default_gen_params(TaskKind task, int width, int height) {
  GenParams p;
  p.width = width;
  p.height = height;
  switch (task) {
    case TaskKind::AppendStillEasy:
      break;
    case TaskKind::AppendStill:
      p.green_patterns = 4;
      break;
    case TaskKind::AppendSpawn:
      p.spawners = 2;
      break;
    case TaskKind::PruneStillEasy:
      p.red_patterns = 2;
      p.blue_width = 0;
      p.blue_height = 0;
      break;
  }
  return p;
}

int shortest_path_to_goal(const Board& board, Coord start) {
  std::vector<int> dist(board.size(), -1);
  std::deque<Coord> queue;
  start = board.wrap(start);
  dist[board.index(start)] = 0;
  queue.push_back(start);
  constexpr Coord kSteps[] = {{0, -1}, {0, 1}, {1, 0}, {-1, 0}};
  while (!queue.empty()) {
    const Coord p = queue.front();
    queue.pop_front();
    const int d = dist[board.index(p)];
    for (Coord s : kSteps) {
      const Coord q = board.wrap({p.x + s.x, p.y + s.y});
      const std::size_t i = board.index(q);
      if (dist[i] >= 0) continue;
      const CellKind kind = board.at(q).kind;
      if (kind == CellKind::Goal) return d + 1;
      if (kind != CellKind::Empty) continue;
      dist[i] = d + 1;
      queue.push_back(q);
    }
  }
  return -1;
}

EnvState generate_environment(TaskKind task, const GenParams& params, const EnvRules& rules,
                              RngStream& rng) {
  if (params.width < 5 || params.height < 5 || params.width > kMaxBoardSide ||
      params.height > kMaxBoardSide) {
    throw ContractError("generated boards need sides in 5..1024");
  }
  if (params.green_patterns < 0 || params.red_patterns < 0 || params.spawners < 0 ||
      params.blue_width < 0 || params.blue_height < 0 || params.max_retries < 1) {
    throw ContractError("generation counts must be nonnegative");
  }
  const bool append = is_append(task);
  const int spawners = task == TaskKind::AppendSpawn ? params.spawners : 0;

  for (int attempt = 0; attempt < params.max_retries; ++attempt) {
    LevelBuilder builder(params, rng);
    bool ok = true;
    for (int i = 0; i < params.green_patterns && ok; ++i) ok = builder.place_pattern(CellColor::Green);
    if (!append) {
      for (int i = 0; i < params.red_patterns && ok; ++i) ok = builder.place_pattern(CellColor::Red);
    }
    if (ok && append) ok = builder.place_blue_region();
    if (!ok) continue;

    const auto agent = builder.free_cell(0);
    if (!agent) continue;
    builder.reserve(*agent);
    const auto goal = builder.free_cell(0);
    if (!goal) continue;
    builder.put(*goal, Cell::goal());

    for (int i = 0; i < spawners && ok; ++i) {
      const auto p = builder.free_cell(3);
      if (p) builder.put(*p, Cell::spawner());
      ok = p.has_value();
    }
    if (!ok) continue;
    const int trees = builder.density_count(params.tree_density);
    for (int i = 0; i < trees; ++i) {
      if (const auto p = builder.free_cell(3)) builder.put(*p, Cell::tree());
    }
    const int walls = builder.density_count(params.wall_density);
    for (int i = 0; i < walls; ++i) {
      if (const auto p = builder.free_cell(0)) builder.put(*p, Cell::wall());
    }
    const int crates = builder.density_count(params.crate_density);
    for (int i = 0; i < crates; ++i) {
      if (const auto p = builder.free_cell(0)) builder.put(*p, Cell::crate());
    }

    if (shortest_path_to_goal(builder.board(), *agent) < 0) continue;
    return make_env_state(std::move(builder.board()), *agent, task, rules,
                          rng.derive(rng_tag::kDynamics));
  }
  throw GenerationError(rng.seed(), std::string("no solvable ") + std::string(task_name(task)) +
                                        " level within " + std::to_string(params.max_retries) +
                                        " attempts");
}

}  // namespace lifeaup
