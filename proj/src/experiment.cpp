#include "lifeaup/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lifeaup/board_io.hpp"
#include "lifeaup/errors.hpp"
#include "lifeaup/format.hpp"
#include "lifeaup/metrics.hpp"

namespace lifeaup {

std::string_view condition_name(Condition c) {
  switch (c) {
    case Condition::Aup: return "aup";
    case Condition::AupProj: return "aup-proj";
    case Condition::Naive: return "naive";
    case Condition::Plain: return "plain";
  }
  return "?";
}

Condition parse_condition(std::string_view name) {
  for (Condition c : {Condition::Aup, Condition::AupProj, Condition::Naive, Condition::Plain}) {
    if (condition_name(c) == name) return c;
  }
  throw ContractError("unknown condition '" + std::string(name) + "'");
}

namespace {

using Setter = void (*)(ExperimentConfig&, const std::string&);

struct KeySpec {
  const char* key;
  const char* default_text;
  Setter set;
};

double real_value(const std::string& v) { return parse_real(v, "value"); }
long long int_value(const std::string& v) { return parse_integer(v, "value"); }
int small_int(const std::string& v) {
  const long long x = int_value(v);
  if (x < -2147483647LL || x > 2147483647LL) throw std::invalid_argument("integer out of range");
  return static_cast<int>(x);
}
bool bool_value(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("expected true/false, got '" + v + "'");
}
std::uint64_t seed_value(const std::string& v) {
  std::size_t used = 0;
  const unsigned long long x = std::stoull(v, &used);
  if (used != v.size() || v.front() == '-') throw std::invalid_argument("not a seed: '" + v + "'");
  return x;
}

const std::vector<KeySpec>& key_specs() {
  static const std::vector<KeySpec> specs = {
      {"task", "append-still-easy", [](ExperimentConfig& c, const std::string& v) { c.task = parse_task(v); }},
      {"condition", "aup", [](ExperimentConfig& c, const std::string& v) { c.condition = parse_condition(v); }},
      {"seed", "1", [](ExperimentConfig& c, const std::string& v) { c.seed = seed_value(v); }},
      {"counterfactual_seed", "7",
       [](ExperimentConfig& c, const std::string& v) { c.counterfactual_seed = seed_value(v); }},
      {"n_env", "8",
       [](ExperimentConfig& c, const std::string& v) { c.n_env = v == "fresh" ? 0 : small_int(v); }},
      {"level", "", [](ExperimentConfig& c, const std::string& v) { c.level = v; }},
      {"board_width", "13", [](ExperimentConfig& c, const std::string& v) { c.gen.width = small_int(v); }},
      {"board_height", "13", [](ExperimentConfig& c, const std::string& v) { c.gen.height = small_int(v); }},
      {"wall_density", "0.05", [](ExperimentConfig& c, const std::string& v) { c.gen.wall_density = real_value(v); }},
      {"crate_density", "0.02", [](ExperimentConfig& c, const std::string& v) { c.gen.crate_density = real_value(v); }},
      {"tree_density", "0.01", [](ExperimentConfig& c, const std::string& v) { c.gen.tree_density = real_value(v); }},
      {"green_patterns", "task default",
       [](ExperimentConfig& c, const std::string& v) { c.gen.green_patterns = small_int(v); }},
      {"red_patterns", "task default",
       [](ExperimentConfig& c, const std::string& v) { c.gen.red_patterns = small_int(v); }},
      {"blue_width", "task default", [](ExperimentConfig& c, const std::string& v) { c.gen.blue_width = small_int(v); }},
      {"blue_height", "task default",
       [](ExperimentConfig& c, const std::string& v) { c.gen.blue_height = small_int(v); }},
      {"spawners", "task default", [](ExperimentConfig& c, const std::string& v) { c.gen.spawners = small_int(v); }},
      {"max_retries", "200", [](ExperimentConfig& c, const std::string& v) { c.gen.max_retries = small_int(v); }},
      {"append_threshold", "0.5",
       [](ExperimentConfig& c, const std::string& v) { c.rules.append_threshold = real_value(v); }},
      {"prune_threshold", "0.5",
       [](ExperimentConfig& c, const std::string& v) { c.rules.prune_threshold = real_value(v); }},
      {"max_steps", "1000", [](ExperimentConfig& c, const std::string& v) { c.rules.max_steps = small_int(v); }},
      {"spawn_probability", "0.3",
       [](ExperimentConfig& c, const std::string& v) { c.rules.spawn_probability = real_value(v); }},
      {"lambda_start", "0.001", [](ExperimentConfig& c, const std::string& v) { c.aup.lambda_start = real_value(v); }},
      {"lambda_final", "0.1 (aup), 0.001 (aup-proj)",
       [](ExperimentConfig& c, const std::string& v) { c.aup.lambda_final = real_value(v); }},
      {"lambda_ramp", "true (aup), false (aup-proj)",
       [](ExperimentConfig& c, const std::string& v) { c.aup.lambda_ramp = bool_value(v); }},
      {"aux_count", "1", [](ExperimentConfig& c, const std::string& v) { c.aup.aux_count = small_int(v); }},
      {"latent_dim", "1", [](ExperimentConfig& c, const std::string& v) { c.aup.latent_dim = small_int(v); }},
      {"explore_steps", "2000", [](ExperimentConfig& c, const std::string& v) { c.aup.explore_steps = int_value(v); }},
      {"encoder_epochs", "20", [](ExperimentConfig& c, const std::string& v) { c.aup.encoder_epochs = small_int(v); }},
      {"aux_steps", "50000", [](ExperimentConfig& c, const std::string& v) { c.aup.aux_steps = int_value(v); }},
      {"main_steps", "200000", [](ExperimentConfig& c, const std::string& v) { c.aup.aup_steps = int_value(v); }},
      {"encoder", "linear-whitened",
       [](ExperimentConfig& c, const std::string& v) { c.aup.encoder_kind = parse_encoder_kind(v); }},
      {"q_kind", "tabular",
       [](ExperimentConfig& c, const std::string& v) {
         c.train.representation = parse_q_kind(v) == QKind::Tabular ? StateRepresentation::TabularKey
                                                                     : StateRepresentation::DownsampledFeatures;
       }},
      {"gamma", "0.97", [](ExperimentConfig& c, const std::string& v) { c.train.q.gamma = real_value(v); }},
      {"alpha", "0.1", [](ExperimentConfig& c, const std::string& v) { c.train.q.alpha = real_value(v); }},
      {"alpha_decay", "inv-sqrt",
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "none") {
           c.train.q.decay = StepSizeDecay::None;
         } else if (v == "inv-sqrt") {
           c.train.q.decay = StepSizeDecay::InverseSqrtVisits;
         } else {
           throw std::invalid_argument("expected none or inv-sqrt");
         }
       }},
      {"q_init", "0", [](ExperimentConfig& c, const std::string& v) { c.train.q.initial_value = real_value(v); }},
      {"epsilon_start", "1.0", [](ExperimentConfig& c, const std::string& v) { c.train.epsilon_start = real_value(v); }},
      {"epsilon_end", "0.05", [](ExperimentConfig& c, const std::string& v) { c.train.epsilon_end = real_value(v); }},
      {"epsilon_anneal_fraction", "0.5",
       [](ExperimentConfig& c, const std::string& v) { c.train.epsilon_anneal_fraction = real_value(v); }},
      {"naive_form", "level",
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "level") {
           c.naive_form = NaiveForm::Level;
         } else if (v == "delta") {
           c.naive_form = NaiveForm::Delta;
         } else {
           throw std::invalid_argument("expected level or delta");
         }
       }},
      {"output_dir", "", [](ExperimentConfig& c, const std::string& v) { c.output_dir = v; }},
      {"snapshot_every", "0", [](ExperimentConfig& c, const std::string& v) { c.snapshot_every = small_int(v); }},
  };
  return specs;
}

const KeySpec* find_key(const std::string& key) {
  for (const KeySpec& s : key_specs()) {
    if (key == s.key) return &s;
  }
  return nullptr;
}

std::string lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

std::string upper(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& config_key_defaults() {
  static const std::vector<std::pair<std::string, std::string>> out = [] {
    std::vector<std::pair<std::string, std::string>> v;
    for (const KeySpec& s : key_specs()) v.emplace_back(s.key, s.default_text);
    return v;
  }();
  return out;
}

void apply_config_value(ExperimentConfig& config, const std::string& key, const std::string& value) {
  const KeySpec* spec = find_key(key);
  if (spec == nullptr) throw ConfigError(key, "unknown key");
  try {
    spec->set(config, std::string(trim(value)));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(key, e.what());
  }
  config.explicit_keys.insert(key);
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(body), "line " + std::to_string(line_no) + " is not key = value");
    }
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    if (!seen.insert(key).second) throw ConfigError(key, "set twice (line " + std::to_string(line_no) + ")");
    apply_config_value(config, key, value);
  }
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  ExperimentConfig config = parse_config(read_text_file(path));
  if (!config.level.empty() && std::filesystem::path(config.level).is_relative()) {
    config.level = (std::filesystem::path(path).parent_path() / config.level).lexically_normal().string();
  }
  return config;
}

void apply_environment_overrides(ExperimentConfig& config, const char* const* environ_vars,
                                 std::string_view prefix) {
  if (environ_vars == nullptr) return;
  for (const char* const* p = environ_vars; *p != nullptr; ++p) {
    const std::string_view entry(*p);
    if (entry.substr(0, prefix.size()) != prefix) continue;
    const auto eq = entry.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string name(entry.substr(prefix.size(), eq - prefix.size()));
    const std::string key = lower(name);
    if (find_key(key) == nullptr || upper(key) != name) {
      throw ConfigError(std::string(entry.substr(0, eq)), "unknown environment override");
    }
    apply_config_value(config, key, std::string(entry.substr(eq + 1)));
  }
}

void finalize_config(ExperimentConfig& config) {
  auto set = [&](const std::string& key) { return config.explicit_keys.count(key) > 0; };

  // Task-dependent generation defaults for keys left unset.
  const GenParams task_defaults = default_gen_params(config.task, config.gen.width, config.gen.height);
  if (!set("green_patterns")) config.gen.green_patterns = task_defaults.green_patterns;
  if (!set("red_patterns")) config.gen.red_patterns = task_defaults.red_patterns;
  if (!set("blue_width")) config.gen.blue_width = task_defaults.blue_width;
  if (!set("blue_height")) config.gen.blue_height = task_defaults.blue_height;
  if (!set("spawners")) config.gen.spawners = task_defaults.spawners;

  config.aup.source = config.condition == Condition::AupProj ? AuxSource::Projection : AuxSource::Encoder;
  if (config.condition == Condition::AupProj) {
    if (!set("lambda_final")) config.aup.lambda_final = 0.001;
    if (!set("lambda_ramp")) config.aup.lambda_ramp = false;
  }

  auto require = [](bool ok, const char* key, const char* what) {
    if (!ok) throw ConfigError(key, what);
  };
  require(config.n_env >= 0, "n_env", "must be >= 1 or 'fresh'");
  require(config.gen.width >= 5 && config.gen.width <= kMaxBoardSide, "board_width", "must lie in 5..1024");
  require(config.gen.height >= 5 && config.gen.height <= kMaxBoardSide, "board_height", "must lie in 5..1024");
  for (auto [key, v] : {std::pair{"wall_density", config.gen.wall_density},
                        std::pair{"crate_density", config.gen.crate_density},
                        std::pair{"tree_density", config.gen.tree_density},
                        std::pair{"append_threshold", config.rules.append_threshold},
                        std::pair{"prune_threshold", config.rules.prune_threshold},
                        std::pair{"spawn_probability", config.rules.spawn_probability},
                        std::pair{"epsilon_start", config.train.epsilon_start},
                        std::pair{"epsilon_end", config.train.epsilon_end}}) {
    require(v >= 0.0 && v <= 1.0, key, "must lie in [0, 1]");
  }
  require(config.gen.green_patterns >= 0, "green_patterns", "must be >= 0");
  require(config.gen.red_patterns >= 0, "red_patterns", "must be >= 0");
  require(config.gen.spawners >= 0, "spawners", "must be >= 0");
  require(config.gen.blue_width >= 0, "blue_width", "must be >= 0");
  require(config.gen.blue_height >= 0, "blue_height", "must be >= 0");
  require(config.gen.max_retries >= 1, "max_retries", "must be >= 1");
  require(config.rules.max_steps >= 1, "max_steps", "must be >= 1");
  require(config.aup.lambda_start >= 0.0, "lambda_start", "must be >= 0");
  require(config.aup.lambda_final >= 0.0, "lambda_final", "must be >= 0");
  require(!config.aup.lambda_ramp || config.aup.lambda_start <= config.aup.lambda_final, "lambda_start",
          "must not exceed lambda_final");
  require(config.aup.aux_count >= 1, "aux_count", "must be >= 1");
  require(config.aup.latent_dim >= 1 && config.aup.latent_dim <= kDownsampledDim, "latent_dim",
          "must lie in 1..25");
  require(config.aup.explore_steps >= 0, "explore_steps", "must be >= 0");
  require(config.aup.encoder_epochs >= 0, "encoder_epochs", "must be >= 0");
  require(config.aup.aux_steps >= 0, "aux_steps", "must be >= 0");
  require(config.aup.aup_steps >= 1, "main_steps", "must be >= 1");
  require(config.train.q.gamma >= 0.0 && config.train.q.gamma < 1.0, "gamma", "must lie in [0, 1)");
  require(config.train.q.alpha > 0.0 && std::isfinite(config.train.q.alpha), "alpha", "must be positive");
  require(std::isfinite(config.train.q.initial_value), "q_init", "must be finite");
  require(config.train.epsilon_anneal_fraction >= 0.0, "epsilon_anneal_fraction", "must be >= 0");
  require(config.snapshot_every >= 0, "snapshot_every", "must be >= 0");
  if (config.condition == Condition::Aup) {
    const int slots = config.level.empty() ? std::max(config.n_env, 1) : 1;
    require(config.aup.explore_steps >= slots, "explore_steps", "must cover every curriculum environment");
  }
}

std::string describe_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "task = " << task_name(config.task) << '\n';
  out << "condition = " << condition_name(config.condition) << '\n';
  out << "seed = " << config.seed << '\n';
  out << "counterfactual_seed = " << config.counterfactual_seed << '\n';
  out << "n_env = " << (config.n_env == 0 ? std::string("fresh") : std::to_string(config.n_env)) << '\n';
  if (!config.level.empty()) out << "level = " << config.level << '\n';
  out << "main_steps = " << config.main_steps() << '\n';
  out << "lambda = " << format_real(config.aup.lambda_start) << " -> " << format_real(config.aup.lambda_final)
      << (config.aup.lambda_ramp ? " (ramp)" : " (flat)") << '\n';
  return out.str();
}

Curriculum build_curriculum(const ExperimentConfig& config) {
  if (!config.level.empty()) {
    const Level level = read_level_file(config.level);
    if (!level.agent) throw ConfigError("level", "board file has no agent start 'A'");
    EnvState s = make_env_state(level.board, *level.agent, config.task, config.rules, RngStream(config.seed));
    return Curriculum::from_states({std::move(s)}, config.seed);
  }
  return Curriculum(config.task, config.n_env, config.seed, config.gen, config.rules);
}

std::string format_metrics_row(const MetricsRow& r) {
  std::string out = std::to_string(r.episode) + ',' + std::to_string(r.global_step) + ',';
  out += format_real(r.primary_return, 10) + ',' + format_real(r.side_effect, 10) + ',';
  out += std::to_string(r.length) + ',' + format_real(r.mean_penalty, 10) + ',' + format_real(r.lambda, 10);
  return out;
}

MetricsRow parse_metrics_row(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fields.size() != 7) throw std::invalid_argument("metrics row needs 7 fields");
  MetricsRow r;
  r.episode = static_cast<std::uint64_t>(parse_integer(fields[0], "episode"));
  r.global_step = parse_integer(fields[1], "global_step");
  r.primary_return = parse_real(fields[2], "return");
  r.side_effect = parse_real(fields[3], "side_effect");
  r.length = static_cast<int>(parse_integer(fields[4], "length"));
  r.mean_penalty = parse_real(fields[5], "mean_penalty");
  r.lambda = parse_real(fields[6], "lambda");
  return r;
}

std::vector<MetricsRow> parse_metrics_csv(std::string_view text) {
  std::vector<MetricsRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader) throw std::invalid_argument("metrics CSV header mismatch");
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(parse_metrics_row(line));
  }
  return rows;
}

namespace {

class MetricsSink {
 public:
  MetricsSink(const ExperimentConfig& config, const RowCallback& on_row) : on_row_(on_row) {
    if (config.output_dir.empty()) return;
    std::filesystem::create_directories(config.output_dir);
    path_ = (std::filesystem::path(config.output_dir) / "metrics.csv").string();
    std::ofstream out(path_, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path_);
    out << kMetricsHeader << '\n';
  }

  void add(const MetricsRow& row) {
    rows_.push_back(row);
    if (!path_.empty()) {
      std::ofstream out(path_, std::ios::app);
      out << format_metrics_row(row) << '\n';
      out.flush();
    }
    if (on_row_) on_row_(row);
  }

  std::vector<MetricsRow> take() { return std::move(rows_); }

 private:
  const RowCallback& on_row_;
  std::string path_;
  std::vector<MetricsRow> rows_;
};

MetricsRow row_from(const EpisodeSummary& e, double side_effect) {
  return {e.episode, e.global_step, e.primary_return, side_effect, e.length, e.mean_penalty, e.lambda};
}

void write_snapshot(const ExperimentConfig& config, const std::string& name, const QFunction& q) {
  if (config.output_dir.empty()) return;
  write_text_file((std::filesystem::path(config.output_dir) / name).string(), q.serialize());
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& input, const RowCallback& on_row) {
  ExperimentConfig config = input;
  finalize_config(config);
  const Curriculum curriculum = build_curriculum(config);
  MetricsSink sink(config, on_row);
  const RngStream root(config.seed);
  const double p_spawn = config.rules.spawn_probability;

  std::int64_t episodes_done = 0;
  const QFunction* live_policy = nullptr;
  auto maybe_snapshot = [&] {
    ++episodes_done;
    if (config.snapshot_every > 0 && live_policy != nullptr && episodes_done % config.snapshot_every == 0) {
      write_snapshot(config, "policy_ep" + std::to_string(episodes_done) + ".q", *live_policy);
    }
  };

  ExperimentResult result{{}, QFunction(env_q_params(config.train)), {}, {}};
  if (config.condition == Condition::Aup || config.condition == Condition::AupProj) {
    AupHooks hooks;
    hooks.counterfactual_seed = config.counterfactual_seed;
    hooks.on_episode = [&](const EpisodeSummary& e, double score) {
      sink.add(row_from(e, score));
      maybe_snapshot();
    };
    // Snapshots during phase 3 need the policy under training; train_aup owns
    // it, so intermediate snapshots are only written for direct training.
    AupResult aup = train_aup(curriculum, config.aup, config.train, root, hooks);
    result.policy = std::move(aup.policy);
    result.aux_qs = std::move(aup.aux_qs);
    result.encoder = std::move(aup.encoder);
  } else {
    const RewardFn reward =
        config.condition == Condition::Naive ? naive_reward_fn(config.naive_form) : RewardFn(primary_reward);
    RngStream policy_rng = root.derive(rng_tag::kPolicy);
    live_policy = &result.policy;
    train_q_into(result.policy, curriculum, reward, config.main_steps(), config.train, policy_rng,
                 [&](const EpisodeSummary& e) {
                   const double score = score_episode(
                       e.initial->board, e.final_state->board, e.length,
                       episode_counterfactual_seed(config.counterfactual_seed, e.episode), p_spawn);
                   sink.add(row_from(e, score));
                   maybe_snapshot();
                 });
  }

  write_snapshot(config, "policy.q", result.policy);
  for (std::size_t i = 0; i < result.aux_qs.size(); ++i) {
    write_snapshot(config, "aux_" + std::to_string(i) + ".q", result.aux_qs[i]);
  }
  if (result.encoder && !config.output_dir.empty()) {
    write_text_file((std::filesystem::path(config.output_dir) / "encoder.txt").string(), result.encoder->serialize());
  }
  result.rows = sink.take();
  return result;
}

EvalReport evaluate_policy(const QFunction& q, const Curriculum& curriculum, StateRepresentation repr,
                           int episodes, std::uint64_t first_episode, std::uint64_t counterfactual_seed,
                           RngStream& rng) {
  if (episodes < 1) throw ContractError("evaluate_policy: need at least one episode");
  EvalReport report;
  report.episodes = episodes;
  int noop_states = 0;
  for (int i = 0; i < episodes; ++i) {
    const std::uint64_t episode = first_episode + static_cast<std::uint64_t>(i);
    const EnvState start = curriculum.initial_state(episode);
    const Rollout r = greedy_rollout(q, start, repr, start.rules.max_steps, rng);
    report.mean_return += r.total_reward;
    report.goal_rate += r.reached_goal ? 1.0 : 0.0;
    report.mean_side_effect +=
        score_episode(start.board, r.states.back().board, static_cast<int>(r.steps.size()),
                      episode_counterfactual_seed(counterfactual_seed, episode), start.rules.spawn_probability);
    for (const RolloutStep& s : r.steps) noop_states += s.action == kNoOp ? 1 : 0;
    report.visited_states += static_cast<int>(r.steps.size());
  }
  report.mean_return /= episodes;
  report.goal_rate /= episodes;
  report.mean_side_effect /= episodes;
  report.noop_fraction = report.visited_states > 0 ? static_cast<double>(noop_states) / report.visited_states : 1.0;
  return report;
}

std::vector<std::string> render_trajectory(const QFunction& q, const EnvState& start, StateRepresentation repr,
                                           int max_steps, RngStream& rng) {
  if (max_steps < 0) throw ContractError("render_trajectory: negative step budget");
  const Rollout r = greedy_rollout(q, start, repr, max_steps, rng);
  std::vector<std::string> frames;
  frames.push_back("# step 0 start\n" + serialize_board(start.board, start.agent));
  for (std::size_t t = 0; t < r.steps.size(); ++t) {
    const EnvState& s = r.states[t + 1];
    std::string header = "# step " + std::to_string(t + 1) + " action " +
                         std::string(action_name(r.steps[t].action)) + " reward " +
                         format_real(r.steps[t].reward, 10);
    if (s.goal_entered) header += " goal";
    frames.push_back(header + "\n" + serialize_board(s.board, s.goal_entered ? std::nullopt : std::optional(s.agent)));
  }
  return frames;
}

BenchResult bench_ca(int side, int steps, std::uint64_t seed) {
  if (side < 1 || side > kMaxBoardSide || steps < 1) throw ContractError("bench: bad size or step count");
  Board board(side, side);
  RngStream rng(seed);
  for (auto& cell : board.cells()) {
    if (rng.bernoulli(0.35)) cell = Cell::life(CellColor::Gray);
  }
  const auto t0 = std::chrono::steady_clock::now();
  for (int t = 0; t < steps; ++t) board = step_board(board, std::nullopt, rng, 0.0);
  const auto t1 = std::chrono::steady_clock::now();
  BenchResult out;
  out.side = side;
  out.steps = steps;
  out.seconds = std::chrono::duration<double>(t1 - t0).count();
  out.cell_updates_per_second =
      static_cast<double>(side) * side * steps / std::max(out.seconds, 1e-12);
  return out;
}

}  // namespace lifeaup
