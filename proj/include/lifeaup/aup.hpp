#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lifeaup/encoder.hpp"
#include "lifeaup/qlearning.hpp"

namespace lifeaup {

struct PenaltyTerm {
  std::vector<double> gaps;  // |Q_i(s, a) - Q_i(s, noop)| per auxiliary function
  double mean = 0.0;
  double scaled = 0.0;       // lambda * mean
};

struct AupReward {
  double reward = 0.0;
  PenaltyTerm penalty;
};

/// r - (lambda / |R|) * sum_i |Q_i(s, a) - Q_i(s, noop)|.
///
/// All auxiliary Q-functions are evaluated at the same pre-action state.
/// Throws ContractError for an empty auxiliary set or negative lambda.
AupReward aup_reward(double primary, std::span<const QFunction> aux_qs, const StateInput& s,
                     int action, double lambda);

// Clamp-linear ramp from lambda_start (at start_step) to lambda_final (at end_step).
double lambda_schedule(std::int64_t step, std::int64_t start_step, std::int64_t end_step,
                       double lambda_start, double lambda_final);

// Number of cells whose (kind, color) differs from the initial board.
double naive_penalty(const EnvState& state, const EnvState& initial);

enum class NaiveForm : std::uint8_t { Level, Delta };

// Primary reward minus the unscaled difference count (Level) or its
// per-step change (Delta).
RewardFn naive_reward_fn(NaiveForm form);

enum class AuxSource : std::uint8_t {
  Encoder,     // AUP: encoder trained on the exploration buffer
  Projection,  // AUP_proj: random functional on the downsampled observation
};

struct AupConfig {
  double lambda_start = 0.001;
  double lambda_final = 0.1;
  bool lambda_ramp = true;  // flat lambda_final when false
  int aux_count = 1;        // |R|
  int latent_dim = 1;       // Z
  std::int64_t explore_steps = 2000;   // K
  int encoder_epochs = 20;             // T
  std::int64_t aux_steps = 50000;      // L
  std::int64_t aup_steps = 200000;     // N
  AuxSource source = AuxSource::Encoder;
  EncoderKind encoder_kind = EncoderKind::LinearWhitened;

  void validate() const;
};

/// Auxiliary reward used to train Q_i. Entering the goal moves the agent to
/// an absorbing state of the rewardless MDP, so the terminal transition also
/// collects the discounted tail gamma * r(s') / (1 - gamma).
RewardFn auxiliary_reward_fn(const AuxReward& aux, double gamma);

struct AupTrainingLog {
  std::vector<EpisodeSummary> episodes;  // phase-3 episodes (state pointers cleared)
  std::vector<double> side_effects;      // aligned with episodes
};

struct AupResult {
  QFunction policy;
  std::vector<QFunction> aux_qs;
  std::vector<AuxReward> aux_rewards;
  std::optional<Encoder> encoder;
  AupTrainingLog log;
};

struct AupHooks {
  // Called for each phase-3 episode with its side-effect score.
  std::function<void(const EpisodeSummary&, double side_effect)> on_episode;
  std::uint64_t counterfactual_seed = 0;
};

/// Three phases: (1) explore uniformly for K steps and fit the encoder
/// (skipped for the projection source); (2) learn Q_i for each auxiliary
/// reward for L steps; (3) freeze the Q_i and learn the policy on the AUP
/// reward for N steps with lambda ramped over exactly phase 3.
///
/// Phase streams are derived from `rng` by tag, and phase 3 uses the same
/// stream and episode numbering as a plain run, so lambda = 0 reproduces
/// plain training bit for bit.
AupResult train_aup(const Curriculum& curriculum, const AupConfig& config, const TrainOptions& options,
                    const RngStream& rng, const AupHooks& hooks = {});

// Phase-3 reward: AUP transform of the primary reward with the schedule.
RewardFn aup_reward_fn(std::span<const QFunction> aux_qs, const AupConfig& config,
                       StateRepresentation repr);

}  // namespace lifeaup
