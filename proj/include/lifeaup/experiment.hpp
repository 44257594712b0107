#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lifeaup/aup.hpp"

namespace lifeaup {

enum class Condition : std::uint8_t { Aup, AupProj, Naive, Plain };

std::string_view condition_name(Condition c);
Condition parse_condition(std::string_view name);

/// Everything that determines a run. Identical configs (including seeds)
/// produce identical metrics CSVs.
struct ExperimentConfig {
  TaskKind task = TaskKind::AppendStillEasy;
  Condition condition = Condition::Aup;
  std::uint64_t seed = 1;
  std::uint64_t counterfactual_seed = 7;
  int n_env = 8;                 // 0 = fresh level every episode
  std::string level;             // optional board file replacing generation
  GenParams gen;
  EnvRules rules;
  AupConfig aup;
  TrainOptions train;
  NaiveForm naive_form = NaiveForm::Level;
  std::string output_dir;
  int snapshot_every = 0;        // episodes; 0 = final snapshot only
  std::set<std::string> explicit_keys;

  // Main-policy step budget shared by all conditions (phase 3 for AUP).
  std::int64_t main_steps() const { return aup.aup_steps; }
};

// Documented keys in file order, with their defaults as text.
const std::vector<std::pair<std::string, std::string>>& config_key_defaults();

// Applies one key; throws ConfigError naming the key.
void apply_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Parses flat `key = value` text ('#' starts a comment). Unknown keys and
/// duplicates are rejected.
ExperimentConfig parse_config(std::string_view text);

// Reads a config file; a relative `level` path is taken relative to the file.
ExperimentConfig load_config_file(const std::string& path);

// Applies `<prefix><KEY>` environment variables (e.g. LIFEAUP_SEED).
void apply_environment_overrides(ExperimentConfig& config, const char* const* environ_vars,
                                 std::string_view prefix = "LIFEAUP_");

// Fills condition-dependent defaults for keys not set explicitly and checks
// ranges; throws ConfigError.
void finalize_config(ExperimentConfig& config);

std::string describe_config(const ExperimentConfig& config);

Curriculum build_curriculum(const ExperimentConfig& config);

struct MetricsRow {
  std::uint64_t episode = 0;
  std::int64_t global_step = 0;
  double primary_return = 0.0;
  double side_effect = 0.0;
  int length = 0;
  double mean_penalty = 0.0;
  double lambda = 0.0;

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

inline constexpr std::string_view kMetricsHeader =
    "episode,global_step,return,side_effect,length,mean_penalty,lambda";

std::string format_metrics_row(const MetricsRow& row);
MetricsRow parse_metrics_row(std::string_view line);
std::vector<MetricsRow> parse_metrics_csv(std::string_view text);

struct ExperimentResult {
  std::vector<MetricsRow> rows;
  QFunction policy;
  std::vector<QFunction> aux_qs;
  std::optional<Encoder> encoder;
};

using RowCallback = std::function<void(const MetricsRow&)>;

/// Runs one experiment. AUP conditions go through train_aup; Plain and
/// Naive train the policy directly for main_steps. Every completed episode
/// is scored and reported. When output_dir is set, rows are appended to
/// metrics.csv as they arrive and Q snapshots are written there.
ExperimentResult run_experiment(const ExperimentConfig& config, const RowCallback& on_row = {});

struct EvalReport {
  int episodes = 0;
  double mean_return = 0.0;
  double mean_side_effect = 0.0;
  double goal_rate = 0.0;
  double noop_fraction = 0.0;  // share of visited states whose greedy action is noop
  int visited_states = 0;
};

/// Greedy evaluation on episodes first_episode, first_episode + 1, ...
EvalReport evaluate_policy(const QFunction& q, const Curriculum& curriculum, StateRepresentation repr,
                           int episodes, std::uint64_t first_episode, std::uint64_t counterfactual_seed,
                           RngStream& rng);

/// Greedy rollout rendered as board-format frames, each preceded by a
/// `# step <t> action <a> reward <r>` line; frame 0 is the start.
std::vector<std::string> render_trajectory(const QFunction& q, const EnvState& start, StateRepresentation repr,
                                           int max_steps, RngStream& rng);

struct BenchResult {
  int side = 0;
  int steps = 0;
  double seconds = 0.0;
  double cell_updates_per_second = 0.0;
};

// Steps a random spawner-free side x side board and times it.
BenchResult bench_ca(int side, int steps, std::uint64_t seed);

}  // namespace lifeaup
