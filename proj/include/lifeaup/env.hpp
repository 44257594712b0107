#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "lifeaup/board.hpp"
#include "lifeaup/rng.hpp"

namespace lifeaup {

enum class Action : std::uint8_t {
  NoOp,
  MoveN,
  MoveS,
  MoveE,
  MoveW,
  ToggleN,
  ToggleS,
  ToggleE,
  ToggleW,
};

inline constexpr int kNumActions = 9;
inline constexpr Action kNoOp = Action::NoOp;

std::string_view action_name(Action a);
Action action_from_index(int index);
constexpr int action_index(Action a) { return static_cast<int>(a); }

enum class TaskKind : std::uint8_t { AppendStillEasy, AppendStill, AppendSpawn, PruneStillEasy };

std::string_view task_name(TaskKind task);
TaskKind parse_task(std::string_view name);
constexpr bool is_append(TaskKind t) { return t != TaskKind::PruneStillEasy; }

struct EnvRules {
  double append_threshold = 0.5;
  double prune_threshold = 0.5;
  int max_steps = 1000;
  double spawn_probability = 0.3;
};

struct TaskProgress {
  int blue_tiles = 0;
  int gray_on_blue = 0;
  int initial_red = 0;
  int removed_red = 0;  // initial_red - current red Life count; negative if red cells appear

  friend bool operator==(const TaskProgress&, const TaskProgress&) = default;
};

struct EnvState {
  Board board;
  Coord agent;
  int step = 0;
  TaskKind task = TaskKind::AppendStillEasy;
  TaskProgress progress;
  bool goal_open = false;
  bool goal_entered = false;
  EnvRules rules;
  RngStream rng;

  bool done() const { return goal_entered || step >= rules.max_steps; }

  friend bool operator==(const EnvState& a, const EnvState& b) {
    return a.board == b.board && a.agent == b.agent && a.step == b.step && a.task == b.task &&
           a.progress == b.progress && a.goal_open == b.goal_open &&
           a.goal_entered == b.goal_entered && a.rng == b.rng;
  }
};

// Builds a fresh episode state; counts task progress from the board.
// Throws ContractError if the agent does not stand on an Empty cell.
EnvState make_env_state(Board board, Coord agent, TaskKind task, const EnvRules& rules,
                        RngStream rng);

// Recounts task progress from the board, keeping initial_red.
TaskProgress measure_progress(const Board& board, TaskKind task, int initial_red);
bool goal_open_for(const TaskProgress& progress, TaskKind task, const EnvRules& rules);

struct StepResult {
  EnvState state;
  double reward = 0.0;
  bool done = false;
};

/// Advances one environment step: agent sub-move, CA step with the freeze
/// zone at the post-move position, reward accrual, goal update.
///
/// The agent's own tile is occupied, so no cell is born under it. Throws
/// ContractError when called on a finished episode.
StepResult apply_action(const EnvState& state, Action action);

inline constexpr int kObservationSide = 25;

struct ObservedCell {
  CellKind kind = CellKind::Empty;
  CellColor color = CellColor::None;
  bool blue = false;

  friend bool operator==(const ObservedCell&, const ObservedCell&) = default;
};

// Egocentric 25x25 torus-wrapped window; the agent's tile is the center.
struct Observation {
  std::array<ObservedCell, kObservationSide * kObservationSide> cells{};
  bool goal_open = false;

  const ObservedCell& at(int row, int col) const { return cells[row * kObservationSide + col]; }

  friend bool operator==(const Observation&, const Observation&) = default;
};

Observation observe(const EnvState& state);

// 64-bit digest of (board, blue mask, agent, goal_open): the tabular state key.
std::uint64_t state_key(const EnvState& state);

}  // namespace lifeaup
