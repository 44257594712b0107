#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "lifeaup/board_io.hpp"
#include "lifeaup/errors.hpp"
#include "lifeaup/experiment.hpp"
#include "lifeaup/format.hpp"
#include "lifeaup/metrics.hpp"

extern char** environ;

namespace {

using namespace lifeaup;

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kGeneration = 3, kInvariant = 4 };

struct ConfigArgs {
  std::string file;
  std::vector<std::string> sets;

  void attach(CLI::App* app) {
    app->add_option("-c,--config", file, "key = value config file")->check(CLI::ExistingFile);
    app->add_option("-s,--set", sets, "override one key (key=value); repeatable");
    std::string keys = "Config keys (default):\n";
    for (const auto& [key, value] : config_key_defaults()) keys += "  " + key + " (" + value + ")\n";
    app->footer(keys);
  }

  ExperimentConfig load() const {
    ExperimentConfig config = file.empty() ? ExperimentConfig{} : load_config_file(file);
    apply_environment_overrides(config, environ);
    for (const std::string& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError(kv, "--set expects key=value");
      apply_config_value(config, std::string(trim(kv.substr(0, eq))), kv.substr(eq + 1));
    }
    finalize_config(config);
    return config;
  }
};

int cmd_gen(const ConfigArgs& args, int count, const std::string& out_dir) {
  const ExperimentConfig config = args.load();
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  for (int i = 0; i < count; ++i) {
    RngStream rng = RngStream(config.seed).derive(rng_tag::kGeneration).derive(static_cast<std::uint64_t>(i));
    const EnvState s = generate_environment(config.task, config.gen, config.rules, rng);
    const std::string text = serialize_board(s.board, s.agent);
    if (out_dir.empty()) {
      std::cout << (i > 0 ? "\n" : "") << text;
    } else {
      const auto path = std::filesystem::path(out_dir) / ("level_" + std::to_string(i) + ".txt");
      write_text_file(path.string(), text);
      std::cout << path.string() << '\n';
    }
  }
  return kOk;
}

int cmd_train(const ConfigArgs& args, const std::vector<std::uint64_t>& seeds, int jobs) {
  const ExperimentConfig base = args.load();
  if (seeds.empty()) {
    std::cerr << describe_config(base);
    const ExperimentResult r = run_experiment(base, [](const MetricsRow& row) {
      if (row.episode % 50 == 0) std::cerr << format_metrics_row(row) << '\n';
    });
    std::cout << "episodes " << r.rows.size() << '\n';
    return kOk;
  }
  if (base.output_dir.empty()) throw ConfigError("output_dir", "required with --seeds");

  std::mutex out_mutex;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      ExperimentConfig config = base;
      config.seed = seeds[i];
      config.output_dir = (std::filesystem::path(base.output_dir) / ("seed_" + std::to_string(seeds[i]))).string();
      try {
        const ExperimentResult r = run_experiment(config);
        std::lock_guard lock(out_mutex);
        std::cout << "seed " << seeds[i] << " episodes " << r.rows.size() << " -> " << config.output_dir << '\n';
      } catch (...) {
        std::lock_guard lock(out_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(seeds.size())));
  for (int j = 0; j < n; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return kOk;
}

int cmd_eval(const ConfigArgs& args, const std::string& snapshot, int episodes, std::uint64_t first) {
  const ExperimentConfig config = args.load();
  const QFunction q = QFunction::parse(read_text_file(snapshot));
  const Curriculum curriculum = build_curriculum(config);
  RngStream rng = RngStream(config.seed).derive(rng_tag::kEvaluation);
  const EvalReport r =
      evaluate_policy(q, curriculum, config.train.representation, episodes, first, config.counterfactual_seed, rng);
  std::cout << "episodes " << r.episodes << '\n'
            << "mean_return " << format_real(r.mean_return, 10) << '\n'
            << "mean_side_effect " << format_real(r.mean_side_effect, 10) << '\n'
            << "goal_rate " << format_real(r.goal_rate, 10) << '\n'
            << "noop_fraction " << format_real(r.noop_fraction, 10) << '\n'
            << "visited_states " << r.visited_states << '\n';
  return kOk;
}

int cmd_score(const std::string& initial_path, const std::string& final_path, int steps, std::uint64_t seed,
              double p_spawn, bool verbose) {
  const Board initial = read_level_file(initial_path).board;
  const Board final_board = read_level_file(final_path).board;
  const Board reference = counterfactual_rollout(initial, steps, seed, p_spawn);
  const SideEffectReport r = side_effect_score(CellConfiguration::of_color(reference, CellColor::Green),
                                               CellConfiguration::of_color(final_board, CellColor::Green));
  std::cout << "score " << format_real(r.score, 10) << '\n';
  if (verbose) {
    std::cout << "matched " << r.matched.size() << '\n'
              << "unmatched_reference " << r.unmatched_reference << '\n'
              << "unmatched_actual " << r.unmatched_actual << '\n';
    for (const MatchedPair& p : r.matched) {
      std::cout << "pair " << p.reference.x << ' ' << p.reference.y << ' ' << p.actual.x << ' ' << p.actual.y
                << ' ' << p.distance << '\n';
    }
  }
  return kOk;
}

int cmd_render(const ConfigArgs& args, const std::string& snapshot, std::uint64_t episode, int max_steps) {
  const ExperimentConfig config = args.load();
  const QFunction q = QFunction::parse(read_text_file(snapshot));
  const Curriculum curriculum = build_curriculum(config);
  const EnvState start = curriculum.initial_state(episode);
  RngStream rng = RngStream(config.seed).derive(rng_tag::kEvaluation);
  const int budget = max_steps >= 0 ? max_steps : start.rules.max_steps;
  for (const std::string& frame : render_trajectory(q, start, config.train.representation, budget, rng)) {
    std::cout << frame << '\n';
  }
  return kOk;
}

int cmd_verify_prop1(int mdps, int states, int actions, double gamma, int samples, std::uint64_t seed,
                     double tol, bool verbose) {
  RngStream rng(seed);
  int violations = 0;
  std::size_t pairs = 0;
  for (int i = 0; i < mdps; ++i) {
    RngStream mdp_rng = rng.derive(static_cast<std::uint64_t>(i));
    const FiniteMdp mdp = random_deterministic_mdp(states, actions, gamma, mdp_rng);
    const Prop1Report report = check_prop1(mdp, samples, mdp_rng, tol);
    violations += static_cast<int>(report.violations.size());
    pairs += report.pairs.size();
    if (verbose || !report.ok()) std::cout << "# mdp " << i << '\n' << report.to_text();
  }
  std::cout << "mdps " << mdps << '\n'
            << "pairs " << pairs << '\n'
            << "violations " << violations << '\n'
            << "status " << (violations == 0 ? "ok" : "violated") << '\n';
  return violations == 0 ? kOk : kInvariant;
}

int cmd_bench(int side, int steps, std::uint64_t seed) {
  const BenchResult r = bench_ca(side, steps, seed);
  std::cout << "side " << r.side << '\n'
            << "steps " << r.steps << '\n'
            << "seconds " << format_real(r.seconds, 6) << '\n'
            << "cell_updates_per_second " << format_real(r.cell_updates_per_second, 6) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Game of Life side-effect gridworlds and impact-penalized Q-learning"};
  app.require_subcommand(1);
  int code = kOk;

  ConfigArgs gen_args;
  int gen_count = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate level files");
  gen_args.attach(gen);
  gen->add_option("-n,--count", gen_count, "number of levels")->check(CLI::PositiveNumber);
  gen->add_option("-o,--out-dir", gen_out, "directory for level_<i>.txt (stdout if unset)");

  ConfigArgs train_args;
  std::vector<std::uint64_t> train_seeds;
  int train_jobs = 1;
  auto* train = app.add_subcommand("train", "run an experiment and write metrics.csv");
  train_args.attach(train);
  train->add_option("--seeds", train_seeds, "run one experiment per seed under output_dir/seed_<s>")
      ->delimiter(',');
  train->add_option("-j,--jobs", train_jobs, "parallel seed workers")->check(CLI::PositiveNumber);

  ConfigArgs eval_args;
  std::string eval_snapshot;
  int eval_episodes = 20;
  std::uint64_t eval_first = 1000000;
  auto* eval = app.add_subcommand("eval", "evaluate a policy snapshot greedily");
  eval_args.attach(eval);
  eval->add_option("snapshot", eval_snapshot, "Q snapshot file")->required();
  eval->add_option("-e,--episodes", eval_episodes, "evaluation episodes")->check(CLI::PositiveNumber);
  eval->add_option("--first-episode", eval_first, "first held-out episode index");

  std::string score_initial;
  std::string score_final;
  int score_steps = 0;
  std::uint64_t score_seed = 0;
  double score_p = kDefaultSpawnProbability;
  bool score_verbose = false;
  auto* score = app.add_subcommand("score", "side-effect score of a final board against the agent-free rollout");
  score->add_option("initial", score_initial, "initial board file")->required();
  score->add_option("final", score_final, "final board file")->required();
  score->add_option("-t,--steps", score_steps, "counterfactual steps")->check(CLI::NonNegativeNumber);
  score->add_option("--seed", score_seed, "counterfactual seed");
  score->add_option("--spawn-probability", score_p, "spawner probability")->check(CLI::Range(0.0, 1.0));
  score->add_flag("-v,--verbose", score_verbose, "print the matching");

  ConfigArgs render_args;
  std::string render_snapshot;
  std::uint64_t render_episode = 0;
  int render_steps = -1;
  auto* render = app.add_subcommand("render", "greedy trajectory as board frames");
  render_args.attach(render);
  render->add_option("snapshot", render_snapshot, "Q snapshot file")->required();
  render->add_option("--episode", render_episode, "curriculum episode to start from");
  render->add_option("-t,--max-steps", render_steps, "step budget (default max_steps)");

  int p_mdps = 200;
  int p_states = 12;
  int p_actions = 3;
  double p_gamma = 0.9;
  int p_samples = 100;
  std::uint64_t p_seed = 1;
  double p_tol = 1e-6;
  bool p_verbose = false;
  auto* prop1 = app.add_subcommand("verify-prop1", "check the communicability bound on random MDPs");
  prop1->add_option("--mdps", p_mdps)->check(CLI::PositiveNumber);
  prop1->add_option("--states", p_states)->check(CLI::Range(1, kMaxExactStates));
  prop1->add_option("--actions", p_actions)->check(CLI::PositiveNumber);
  prop1->add_option("--gamma", p_gamma)->check(CLI::Range(0.0, 0.999999));
  prop1->add_option("--samples", p_samples)->check(CLI::NonNegativeNumber);
  prop1->add_option("--seed", p_seed);
  prop1->add_option("--tol", p_tol)->check(CLI::NonNegativeNumber);
  prop1->add_flag("-v,--verbose", p_verbose, "print every report");

  int b_side = 350;
  int b_steps = 200;
  std::uint64_t b_seed = 1;
  auto* bench = app.add_subcommand("bench", "CA cell updates per second");
  bench->add_option("--side", b_side)->check(CLI::Range(1, kMaxBoardSide));
  bench->add_option("--steps", b_steps)->check(CLI::PositiveNumber);
  bench->add_option("--seed", b_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? kOk : kConfig;
  }

  try {
    if (gen->parsed()) code = cmd_gen(gen_args, gen_count, gen_out);
    if (train->parsed()) code = cmd_train(train_args, train_seeds, train_jobs);
    if (eval->parsed()) code = cmd_eval(eval_args, eval_snapshot, eval_episodes, eval_first);
    if (score->parsed()) {
      code = cmd_score(score_initial, score_final, score_steps, score_seed, score_p, score_verbose);
    }
    if (render->parsed()) code = cmd_render(render_args, render_snapshot, render_episode, render_steps);
    if (prop1->parsed()) {
      code = cmd_verify_prop1(p_mdps, p_states, p_actions, p_gamma, p_samples, p_seed, p_tol, p_verbose);
    }
    if (bench->parsed()) code = cmd_bench(b_side, b_steps, b_seed);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kConfig;
  } catch (const GenerationError& e) {
    std::cerr << "generation failed: " << e.what() << '\n';
    return kGeneration;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return code;
}
