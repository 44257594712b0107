#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lifeaup/curriculum.hpp"
#include "lifeaup/features.hpp"
#include "lifeaup/qfunction.hpp"
#include "lifeaup/theory.hpp"

namespace lifeaup {

// How environment states are presented to Q-functions.
enum class StateRepresentation : std::uint8_t { TabularKey, DownsampledFeatures };

/// Key and features of one state. Features are the 25 pooled intensities
/// plus a trailing constant 1; they are only computed for the feature form.
struct EncodedState {
  std::uint64_t key = 0;
  FeatureVector features;

  StateInput input() const { return {key, features}; }
};

inline constexpr int kLinearFeatureDim = kDownsampledDim + 1;

EncodedState encode_state(const EnvState& state, StateRepresentation repr);

struct Transition {
  const EnvState& episode_start;
  const EnvState& before;
  Action action;
  const EnvState& after;
  double primary_reward;
  bool done;
  std::int64_t step;  // index of this step within the training run
};

struct ShapedReward {
  double reward = 0.0;
  double penalty = 0.0;
  double lambda = 0.0;
};

using RewardFn = std::function<ShapedReward(const Transition&)>;

// Unshaped primary task reward.
ShapedReward primary_reward(const Transition& t);

struct EpisodeSummary {
  std::uint64_t episode = 0;      // curriculum episode index
  std::int64_t global_step = 0;   // training steps taken when the episode ended
  double primary_return = 0.0;
  double shaped_return = 0.0;
  int length = 0;
  double mean_penalty = 0.0;
  double lambda = 0.0;            // at the final step
  bool reached_goal = false;
  const EnvState* initial = nullptr;
  const EnvState* final_state = nullptr;
};

using EpisodeCallback = std::function<void(const EpisodeSummary&)>;

struct TrainOptions {
  QParams q;
  StateRepresentation representation = StateRepresentation::TabularKey;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double epsilon_anneal_fraction = 0.5;  // of the step budget
  std::uint64_t first_episode = 0;
};

// QParams with n_actions / feature_dim filled in for the environment.
QParams env_q_params(const TrainOptions& options);

/// Epsilon-greedy Q-learning over the curriculum for exactly `steps` steps.
///
/// Episodes start at `first_episode` and advance round-robin through the
/// curriculum. Entering the goal is terminal; hitting max_steps is a
/// truncation and still bootstraps from the last state. Completed episodes
/// are reported to `on_episode`.
QFunction train_q(const Curriculum& curriculum, const RewardFn& reward_fn, std::int64_t steps,
                  const TrainOptions& options, RngStream& rng, const EpisodeCallback& on_episode = {});

// Continues training an existing Q-function.
void train_q_into(QFunction& q, const Curriculum& curriculum, const RewardFn& reward_fn,
                  std::int64_t steps, const TrainOptions& options, RngStream& rng,
                  const EpisodeCallback& on_episode = {});

/// Q-learning on a finite MDP with state reward r(s) under uniform
/// exploration: each update draws (s, a) uniformly and backs up
/// r(s) + gamma * max Q(s', .). Converges to optimal_q for deterministic MDPs.
QFunction q_learning_on_mdp(const FiniteMdp& mdp, const std::vector<double>& reward,
                            std::int64_t updates, const QParams& params, RngStream& rng);

struct RolloutStep {
  Action action;
  double reward;
};

struct Rollout {
  std::vector<EnvState> states;  // states[0] is the start
  std::vector<RolloutStep> steps;
  bool reached_goal = false;
  double total_reward = 0.0;
};

// Greedy rollout of `q` (ties broken by `rng`) for at most `max_steps` steps.
Rollout greedy_rollout(const QFunction& q, const EnvState& start, StateRepresentation repr,
                       int max_steps, RngStream& rng);

}  // namespace lifeaup
