#include <map>
#include <set>

#include "doctest.h"
#include "lifeaup/board_io.hpp"
#include "lifeaup/errors.hpp"
#include "lifeaup/levelgen.hpp"
#include "lifeaup/metrics.hpp"
#include "oracles.hpp"

using namespace lifeaup;

namespace {

EnvState state_of(const std::string& text, TaskKind task, EnvRules rules = {}) {
  const Level level = parse_level(text);
  return make_env_state(level.board, *level.agent, task, rules, RngStream(11));
}

struct Replay {
  EnvState final_state;
  double total = 0.0;
  bool done = false;
  int steps = 0;
};

Replay replay(EnvState s, const std::vector<Action>& actions) {
  Replay r{s};
  for (Action a : actions) {
    const StepResult step = apply_action(r.final_state, a);
    r.final_state = step.state;
    r.total += step.reward;
    ++r.steps;
    if (step.done) {
      r.done = true;
      break;
    }
  }
  return r;
}

std::vector<Action> repeat(Action a, int n) { return std::vector<Action>(static_cast<std::size_t>(n), a); }

std::vector<Action> concat(std::initializer_list<std::vector<Action>> parts) {
  std::vector<Action> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

TEST_CASE("action and task names") {
  for (int i = 0; i < kNumActions; ++i) CHECK(action_index(action_from_index(i)) == i);
  CHECK(action_index(kNoOp) == 0);
  CHECK_THROWS_AS(action_from_index(9), ContractError);
  for (TaskKind t : {TaskKind::AppendStillEasy, TaskKind::AppendStill, TaskKind::AppendSpawn,
                     TaskKind::PruneStillEasy}) {
    CHECK(parse_task(task_name(t)) == t);
  }
  CHECK_THROWS(parse_task("prune-hard"));
}

TEST_CASE("noop on a settled board") {
  EnvState s = state_of("[terrain]\n......\n.gg...\n.gg.A.\n......\n.....E\n", TaskKind::AppendStillEasy);
  const StepResult r = apply_action(s, kNoOp);
  CHECK(r.state.board == s.board);
  CHECK(r.reward == 0.0);
  CHECK_FALSE(r.done);
  CHECK(r.state.step == 1);
}

TEST_CASE("toggling a neighbor cell") {
  EnvState green = state_of("[terrain]\n.....\n.Ag..\n....E\n", TaskKind::PruneStillEasy);
  StepResult r = apply_action(green, Action::ToggleE);
  CHECK(r.state.board.at({2, 1}) == Cell::empty());
  CHECK(r.reward == 0.0);

  EnvState red = state_of("[terrain]\n.....\n.Ar..\n....E\n", TaskKind::PruneStillEasy);
  r = apply_action(red, Action::ToggleE);
  CHECK(r.state.board.at({2, 1}) == Cell::empty());
  CHECK(r.reward == 1.0);
  CHECK(r.state.goal_open);

  // Toggling Empty creates Gray Life, which stays while it is in the freeze zone.
  r = apply_action(r.state, Action::ToggleE);
  CHECK(r.state.board.at({2, 1}) == Cell::life(CellColor::Gray));
}

TEST_CASE("movement rules") {
  EnvState s = state_of("[terrain]\n.......\n.#Ac.c.\n..g....\n......E\n", TaskKind::AppendStillEasy);
  StepResult r = apply_action(s, Action::MoveW);
  CHECK(r.state.agent == Coord{2, 1});
  r = apply_action(s, Action::MoveS);
  CHECK(r.state.agent == Coord{2, 1});
  r = apply_action(s, Action::MoveE);
  CHECK(r.state.agent == Coord{3, 1});
  CHECK(r.state.board.at({4, 1}).kind == CellKind::Crate);
  r = apply_action(r.state, Action::MoveE);
  CHECK(r.state.agent == Coord{3, 1});
  r = apply_action(s, Action::MoveN);
  CHECK(r.state.agent == Coord{2, 0});
  r = apply_action(r.state, Action::MoveN);
  CHECK(r.state.agent == Coord{2, 3});
}

TEST_CASE("goal opens from task progress and is recomputed every step") {
  const std::string text =
      "[terrain]\n"
      "......\n"
      ".A....\n"
      "......\n"
      "....E.\n"
      "[blue]\n"
      "......\n"
      "..B...\n"
      "......\n"
      "......\n";
  EnvState s = state_of(text, TaskKind::AppendStillEasy);
  CHECK_FALSE(s.goal_open);
  StepResult r = apply_action(s, Action::ToggleE);
  CHECK(r.reward == 1.0);
  CHECK(r.state.goal_open);
  r = apply_action(r.state, Action::ToggleE);
  CHECK(r.reward == -1.0);
  CHECK_FALSE(r.state.goal_open);
}

TEST_CASE("entering an open goal ends the episode, max steps truncates") {
  EnvRules rules;
  rules.max_steps = 3;
  EnvState s = state_of("[terrain]\n.....\n.AE..\n.....\n", TaskKind::PruneStillEasy, rules);
  CHECK(s.goal_open);
  StepResult r = apply_action(s, Action::MoveE);
  CHECK(r.done);
  CHECK(r.state.goal_entered);
  CHECK(r.reward == 1.0);
  CHECK_THROWS_AS(apply_action(r.state, kNoOp), ContractError);

  Replay idle = replay(s, repeat(kNoOp, 5));
  CHECK(idle.steps == 3);
  CHECK(idle.done);
  CHECK_FALSE(idle.final_state.goal_entered);
}

TEST_CASE("closed goal blocks movement") {
  EnvState s = state_of("[terrain]\n.....\n.AE..\n..r..\n", TaskKind::PruneStillEasy);
  CHECK_FALSE(s.goal_open);
  const StepResult r = apply_action(s, Action::MoveE);
  CHECK(r.state.agent == Coord{1, 1});
  CHECK_FALSE(r.done);
}

TEST_CASE("nothing is born under the agent") {
  // Three live cells around the agent's tile would give it a birth.
  EnvState s = state_of("[terrain]\n.......\n..aaa..\n...A...\n.......\n......E\n", TaskKind::AppendStillEasy);
  for (int t = 0; t < 4; ++t) {
    s = apply_action(s, kNoOp).state;
    CHECK(s.board.at(s.agent) == Cell::empty());
  }
}

TEST_CASE("two-path fixture trajectories") {
  const Level level = read_level_file(LIFEAUP_TEST_DATA "/two_path.txt");
  const EnvState start = make_env_state(level.board, *level.agent, TaskKind::PruneStillEasy, {}, RngStream(1));
  REQUIRE(start.goal_open);
  CHECK(shortest_path_to_goal(start.board, start.agent) == 13);

  const auto through = concat({repeat(Action::MoveE, 3), {Action::ToggleE, Action::MoveE, Action::ToggleE},
                               repeat(Action::MoveE, 5)});
  const auto detour = concat({repeat(Action::MoveN, 2), repeat(Action::MoveE, 9), repeat(Action::MoveS, 2)});
  CHECK(through.size() + 2 == detour.size());

  const Replay a = replay(start, through);
  const Replay b = replay(start, detour);
  CHECK(a.done);
  CHECK(b.done);
  CHECK(a.final_state.goal_entered);
  CHECK(b.final_state.goal_entered);
  CHECK(a.total == 1.0);
  CHECK(b.total == 1.0);

  const double through_score = score_episode(start.board, a.final_state.board, a.steps, 3, 0.3);
  const double detour_score = score_episode(start.board, b.final_state.board, b.steps, 3, 0.3);
  CHECK(through_score >= 4.0);
  CHECK(detour_score == 0.0);
  CHECK(b.final_state.board.count(CellKind::Life, CellColor::Green) == 4);
}

TEST_CASE("egocentric observation") {
  Board b(30, 30);
  for (int y = 0; y < 30; ++y) {
    for (int x = 0; x < 30; ++x) {
      if ((x * 7 + y * 3) % 5 == 0) b.set({x, y}, Cell::wall());
    }
  }
  b.set({0, 0}, Cell::empty());
  EnvState s = make_env_state(b, {0, 0}, TaskKind::AppendStillEasy, {}, RngStream(0));
  const Observation obs = observe(s);
  for (int r = 0; r < kObservationSide; ++r) {
    for (int c = 0; c < kObservationSide; ++c) {
      const Coord p{((c - 12) % 30 + 30) % 30, ((r - 12) % 30 + 30) % 30};
      CHECK(obs.at(r, c).kind == b.at(p).kind);
    }
  }
  CHECK(obs.at(12, 12).kind == CellKind::Empty);

  // Translating board and agent together leaves the observation unchanged.
  EnvState moved = make_env_state(b.shifted(7, 11), {7, 11}, TaskKind::AppendStillEasy, {}, RngStream(0));
  CHECK(observe(moved) == obs);

  Board small(5, 5);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 5; ++x) small.set({x, y}, x + 5 * y == 0 ? Cell::empty() : Cell::life(CellColor::Gray));
  }
  std::map<int, int> seen;
  const Observation o5 = observe(make_env_state(small, {0, 0}, TaskKind::AppendStillEasy, {}, RngStream(0)));
  for (int r = 0; r < kObservationSide; ++r) {
    for (int c = 0; c < kObservationSide; ++c) {
      const int x = ((c - 12) % 5 + 5) % 5;
      const int y = ((r - 12) % 5 + 5) % 5;
      ++seen[x + 5 * y];
    }
  }
  CHECK(seen.size() == 25);
  for (auto [cell, n] : seen) CHECK(n == 25);
  int empties = 0;
  for (const ObservedCell& c : o5.cells) empties += c.kind == CellKind::Empty ? 1 : 0;
  CHECK(empties == 25);
}

TEST_CASE("state key separates boards, agents and goal flags") {
  EnvState s = state_of("[terrain]\n.....\n.A.g.\n....E\n", TaskKind::PruneStillEasy);
  std::set<std::uint64_t> keys{state_key(s)};
  EnvState moved = s;
  moved.agent = {2, 1};
  keys.insert(state_key(moved));
  EnvState toggled = s;
  toggled.board.set({3, 1}, Cell::empty());
  keys.insert(state_key(toggled));
  EnvState closed = s;
  closed.goal_open = !s.goal_open;
  keys.insert(state_key(closed));
  EnvState later = s;
  later.step = 17;
  later.rng = RngStream(99);
  CHECK(state_key(later) == state_key(s));
  CHECK(keys.size() == 4);
}

TEST_CASE("episode reward stays within the task bound") {
  RngStream rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const TaskKind task = trial % 2 == 0 ? TaskKind::AppendStillEasy : TaskKind::PruneStillEasy;
    RngStream gen = rng.derive(static_cast<std::uint64_t>(trial));
    EnvRules rules;
    rules.max_steps = 300;
    EnvState s = generate_environment(task, default_gen_params(task), rules, gen);
    const int bound = (is_append(task) ? s.progress.blue_tiles : s.progress.initial_red) + 1;
    double total = 0.0;
    while (!s.done()) {
      const StepResult r = apply_action(s, action_from_index(static_cast<int>(rng.uniform_int(kNumActions))));
      total += r.reward;
      s = r.state;
    }
    CHECK(total <= bound);
  }
}
