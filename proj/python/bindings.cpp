#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lifeaup/board_io.hpp"
#include "lifeaup/ca.hpp"
#include "lifeaup/env.hpp"
#include "lifeaup/errors.hpp"
#include "lifeaup/experiment.hpp"
#include "lifeaup/features.hpp"
#include "lifeaup/metrics.hpp"
#include "lifeaup/theory.hpp"

namespace py = pybind11;
using namespace lifeaup;

namespace {

std::vector<Coord> to_coords(const std::vector<std::pair<int, int>>& cells) {
  std::vector<Coord> out;
  for (auto [x, y] : cells) out.push_back({x, y});
  return out;
}

class PyEnv {
 public:
  PyEnv(const std::string& level_text, const std::string& task, std::uint64_t seed, int max_steps)
      : state_(initial_state(level_text, task, seed, max_steps)) {}

  std::pair<double, bool> step(int action) {
    StepResult r = apply_action(state_, action_from_index(action));
    state_ = std::move(r.state);
    return {r.reward, r.done};
  }

  std::vector<double> features() const { return downsample(observe(state_)); }

  std::vector<std::vector<double>> observation() const {
    const Observation obs = observe(state_);
    std::vector<std::vector<double>> out(kObservationSide, std::vector<double>(kObservationSide));
    for (int r = 0; r < kObservationSide; ++r) {
      for (int c = 0; c < kObservationSide; ++c) out[r][c] = cell_intensity(obs.at(r, c).kind, obs.at(r, c).color);
    }
    return out;
  }

  std::string board() const { return serialize_board(state_.board, state_.agent); }
  std::pair<int, int> agent() const { return {state_.agent.x, state_.agent.y}; }
  bool done() const { return state_.done(); }
  bool goal_open() const { return state_.goal_open; }
  int steps() const { return state_.step; }
  std::uint64_t key() const { return state_key(state_); }

 private:
  static EnvState initial_state(const std::string& level_text, const std::string& task, std::uint64_t seed,
                                int max_steps) {
    const Level level = parse_level(level_text);
    if (!level.agent) throw ContractError("level has no agent start 'A'");
    EnvRules rules;
    rules.max_steps = max_steps;
    return make_env_state(level.board, *level.agent, parse_task(task), rules, RngStream(seed));
  }

  EnvState state_;
};

py::dict row_dict(const MetricsRow& r) {
  py::dict d;
  d["episode"] = r.episode;
  d["global_step"] = r.global_step;
  d["return"] = r.primary_return;
  d["side_effect"] = r.side_effect;
  d["length"] = r.length;
  d["mean_penalty"] = r.mean_penalty;
  d["lambda"] = r.lambda;
  return d;
}

}  // namespace

PYBIND11_MODULE(_lifeaup, m) {
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);

  std::vector<std::string> names;
  for (int a = 0; a < kNumActions; ++a) names.emplace_back(action_name(action_from_index(a)));
  m.attr("ACTIONS") = names;

  py::class_<PyEnv>(m, "Env")
      .def(py::init<const std::string&, const std::string&, std::uint64_t, int>(), py::arg("level"),
           py::arg("task") = "prune-still-easy", py::arg("seed") = 0, py::arg("max_steps") = 1000)
      .def("step", &PyEnv::step, py::arg("action"), "apply an action index; returns (reward, done)")
      .def("features", &PyEnv::features, "25 pooled intensities of the egocentric view")
      .def("observation", &PyEnv::observation, "25x25 egocentric intensities")
      .def_property_readonly("board", &PyEnv::board)
      .def_property_readonly("agent", &PyEnv::agent)
      .def_property_readonly("done", &PyEnv::done)
      .def_property_readonly("goal_open", &PyEnv::goal_open)
      .def_property_readonly("steps", &PyEnv::steps)
      .def_property_readonly("state_key", &PyEnv::key);

  m.def(
      "step_life",
      [](const std::string& board_text, int steps, std::uint64_t seed, double spawn_probability) {
        RngStream rng(seed);
        return serialize_board(step_board_n(parse_board(board_text), steps, rng, spawn_probability));
      },
      py::arg("board"), py::arg("steps") = 1, py::arg("seed") = 0,
      py::arg("spawn_probability") = kDefaultSpawnProbability);

  m.def(
      "side_effect_score",
      [](int width, int height, const std::vector<std::pair<int, int>>& reference,
         const std::vector<std::pair<int, int>>& actual, int penalty) {
        return side_effect_score(CellConfiguration(width, height, to_coords(reference)),
                                 CellConfiguration(width, height, to_coords(actual)), penalty)
            .score;
      },
      py::arg("width"), py::arg("height"), py::arg("reference"), py::arg("actual"), py::arg("penalty") = 1);

  m.def(
      "score_episode",
      [](const std::string& initial, const std::string& final_board, int steps, std::uint64_t seed) {
        return score_episode(parse_board(initial), parse_board(final_board), steps, seed);
      },
      py::arg("initial"), py::arg("final"), py::arg("steps"), py::arg("seed") = 0);

  m.def(
      "train",
      [](const std::string& config_text, const std::map<std::string, std::string>& overrides) {
        ExperimentConfig config = parse_config(config_text);
        for (const auto& [k, v] : overrides) apply_config_value(config, k, v);
        finalize_config(config);
        std::vector<MetricsRow> result;
        {
          py::gil_scoped_release release;
          result = run_experiment(config).rows;
        }
        py::list rows;
        for (const MetricsRow& r : result) rows.append(row_dict(r));
        return rows;
      },
      py::arg("config") = "", py::arg("overrides") = std::map<std::string, std::string>{},
      "run one experiment and return its metrics rows");

  m.def(
      "verify_prop1",
      [](int n_states, int n_actions, double gamma, int samples, std::uint64_t seed) {
        RngStream rng(seed);
        const FiniteMdp mdp = random_deterministic_mdp(n_states, n_actions, gamma, rng);
        const Prop1Report report = check_prop1(mdp, samples, rng, 1e-6);
        return std::make_pair(report.ok(), report.to_text());
      },
      py::arg("states") = 8, py::arg("actions") = 3, py::arg("gamma") = 0.9, py::arg("samples") = 100,
      py::arg("seed") = 0);

  m.def(
      "bench",
      [](int side, int steps, std::uint64_t seed) { return bench_ca(side, steps, seed).cell_updates_per_second; },
      py::arg("side") = 350, py::arg("steps") = 50, py::arg("seed") = 1);
}
