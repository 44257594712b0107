#include "lifeaup/env.hpp"

#include <cmath>

#include "lifeaup/ca.hpp"
#include "lifeaup/errors.hpp"

namespace lifeaup {

namespace {

constexpr std::array<std::string_view, kNumActions> kActionNames = {
    "noop", "move-n", "move-s", "move-e", "move-w", "toggle-n", "toggle-s", "toggle-e", "toggle-w"};

Coord direction(Action a) {
  switch (a) {
    case Action::MoveN:
    case Action::ToggleN: return {0, -1};
    case Action::MoveS:
    case Action::ToggleS: return {0, 1};
    case Action::MoveE:
    case Action::ToggleE: return {1, 0};
    case Action::MoveW:
    case Action::ToggleW: return {-1, 0};
    default: return {0, 0};
  }
}

bool is_move(Action a) { return a >= Action::MoveN && a <= Action::MoveW; }
bool is_toggle(Action a) { return a >= Action::ToggleN; }

int required_count(double threshold, int total) {
  return static_cast<int>(std::ceil(threshold * static_cast<double>(total) - 1e-12));
}

}  // namespace

std::string_view action_name(Action a) { return kActionNames[action_index(a)]; }

Action action_from_index(int index) {
  if (index < 0 || index >= kNumActions) throw ContractError("action index out of range");
  return static_cast<Action>(index);
}

std::string_view task_name(TaskKind task) {
  switch (task) {
    case TaskKind::AppendStillEasy: return "append-still-easy";
    case TaskKind::AppendStill: return "append-still";
    case TaskKind::AppendSpawn: return "append-spawn";
    case TaskKind::PruneStillEasy: return "prune-still-easy";
  }
  return "?";
}

TaskKind parse_task(std::string_view name) {
  for (TaskKind t : {TaskKind::AppendStillEasy, TaskKind::AppendStill, TaskKind::AppendSpawn,
                     TaskKind::PruneStillEasy}) {
    if (task_name(t) == name) return t;
  }
  throw ContractError("unknown task '" + std::string(name) + "'");
}

TaskProgress measure_progress(const Board& board, TaskKind task, int initial_red) {
  TaskProgress p;
  p.initial_red = initial_red;
  int red = 0;
  const auto& cells = board.cells();
  const auto& blue = board.blue_mask();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (blue[i]) {
      ++p.blue_tiles;
      if (cells[i].kind == CellKind::Life && cells[i].color == CellColor::Gray) ++p.gray_on_blue;
    }
    if (cells[i].kind == CellKind::Life && cells[i].color == CellColor::Red) ++red;
  }
  p.removed_red = task == TaskKind::PruneStillEasy ? initial_red - red : 0;
  return p;
}

bool goal_open_for(const TaskProgress& progress, TaskKind task, const EnvRules& rules) {
  if (is_append(task)) {
    return progress.gray_on_blue >= required_count(rules.append_threshold, progress.blue_tiles);
  }
  return progress.removed_red >= required_count(rules.prune_threshold, progress.initial_red);
}

EnvState make_env_state(Board board, Coord agent, TaskKind task, const EnvRules& rules,
                        RngStream rng) {
  agent = board.wrap(agent);
  if (board.at(agent).kind != CellKind::Empty) {
    throw ContractError("agent start must be an Empty cell");
  }
  if (rules.max_steps < 1) throw ContractError("max_steps must be positive");
  const int red = task == TaskKind::PruneStillEasy
                      ? static_cast<int>(board.count(CellKind::Life, CellColor::Red))
                      : 0;
  EnvState s{std::move(board), agent, 0, task, {}, false, false, rules, rng};
  s.progress = measure_progress(s.board, task, red);
  s.goal_open = goal_open_for(s.progress, task, rules);
  return s;
}

StepResult apply_action(const EnvState& state, Action action) {
  if (state.done()) throw ContractError("apply_action on a finished episode");

  StepResult out{state, 0.0, false};
  EnvState& next = out.state;
  Board& board = next.board;
  const Coord d = direction(action);
  const Coord target = board.wrap({state.agent.x + d.x, state.agent.y + d.y});

  bool entered_goal = false;
  if (is_move(action)) {
    Cell& dest = board.at(target);
    switch (dest.kind) {
      case CellKind::Empty:
        next.agent = target;
        break;
      case CellKind::Crate: {
        const Coord beyond = board.wrap({target.x + d.x, target.y + d.y});
        if (board.at(beyond).kind == CellKind::Empty && beyond != state.agent) {
          board.set(beyond, Cell::crate());
          dest = Cell::empty();
          next.agent = target;
        }
        break;
      }
      case CellKind::Goal:
        if (state.goal_open) {
          next.agent = target;
          entered_goal = true;
        }
        break;
      default:
        break;
    }
  } else if (is_toggle(action) && target != state.agent) {
    Cell& cell = board.at(target);
    if (cell.kind == CellKind::Empty) {
      cell = Cell::life(CellColor::Gray);
    } else if (cell.kind == CellKind::Life) {
      cell = Cell::empty();
    }
  }

  const Cell under_agent = board.at(next.agent);
  board = step_board(board, next.agent, next.rng, state.rules.spawn_probability);
  board.set(next.agent, under_agent);

  const TaskProgress before = state.progress;
  next.progress = measure_progress(board, state.task, before.initial_red);
  if (is_append(state.task)) {
    out.reward = next.progress.gray_on_blue - before.gray_on_blue;
  } else {
    out.reward = next.progress.removed_red - before.removed_red;
  }
  if (entered_goal) out.reward += 1.0;

  next.goal_open = goal_open_for(next.progress, state.task, state.rules);
  next.goal_entered = entered_goal;
  next.step = state.step + 1;
  out.done = next.done();
  return out;
}

Observation observe(const EnvState& state) {
  Observation obs;
  obs.goal_open = state.goal_open;
  constexpr int half = kObservationSide / 2;
  for (int r = 0; r < kObservationSide; ++r) {
    for (int c = 0; c < kObservationSide; ++c) {
      const Coord p{state.agent.x + c - half, state.agent.y + r - half};
      const Cell& cell = state.board.at(p);
      obs.cells[r * kObservationSide + c] = {cell.kind, cell.color, state.board.blue(p)};
    }
  }
  return obs;
}

std::uint64_t state_key(const EnvState& state) {
  // FNV-1a over the packed cells followed by a SplitMix finalizer.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  feed(static_cast<std::uint64_t>(state.board.width()));
  feed(static_cast<std::uint64_t>(state.board.height()));
  const auto& cells = state.board.cells();
  const auto& blue = state.board.blue_mask();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    feed((static_cast<std::uint64_t>(cells[i].kind) << 4) |
         (static_cast<std::uint64_t>(cells[i].color) << 1) | blue[i]);
  }
  feed(static_cast<std::uint64_t>(state.agent.x));
  feed(static_cast<std::uint64_t>(state.agent.y));
  feed(state.goal_open ? 1 : 0);
  return RngStream::mix(h);
}

}  // namespace lifeaup
