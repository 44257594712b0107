#include "lifeaup/qlearning.hpp"

#include <cmath>

#include "lifeaup/errors.hpp"

namespace lifeaup {

EncodedState encode_state(const EnvState& state, StateRepresentation repr) {
  EncodedState e;
  if (repr == StateRepresentation::TabularKey) {
    e.key = state_key(state);
  } else {
    e.features = downsample(observe(state));
    e.features.push_back(1.0);
  }
  return e;
}

ShapedReward primary_reward(const Transition& t) { return {t.primary_reward, 0.0, 0.0}; }

QParams env_q_params(const TrainOptions& options) {
  QParams p = options.q;
  p.n_actions = kNumActions;
  p.kind = options.representation == StateRepresentation::TabularKey ? QKind::Tabular : QKind::Linear;
  if (p.kind == QKind::Linear) p.feature_dim = kLinearFeatureDim;
  return p;
}

QFunction train_q(const Curriculum& curriculum, const RewardFn& reward_fn, std::int64_t steps,
                  const TrainOptions& options, RngStream& rng, const EpisodeCallback& on_episode) {
  QFunction q(env_q_params(options));
  train_q_into(q, curriculum, reward_fn, steps, options, rng, on_episode);
  return q;
}

void train_q_into(QFunction& q, const Curriculum& curriculum, const RewardFn& reward_fn,
                  std::int64_t steps, const TrainOptions& options, RngStream& rng,
                  const EpisodeCallback& on_episode) {
  if (steps < 1) throw ContractError("train_q: steps must be >= 1");
  if (!(options.epsilon_anneal_fraction >= 0.0)) throw ContractError("train_q: negative anneal fraction");
  const EpsilonSchedule schedule{
      options.epsilon_start, options.epsilon_end,
      static_cast<std::int64_t>(std::llround(options.epsilon_anneal_fraction * static_cast<double>(steps)))};

  std::uint64_t episode = options.first_episode;
  EnvState start = curriculum.initial_state(episode);
  EnvState state = start;
  EncodedState enc = encode_state(state, options.representation);

  double primary_return = 0.0;
  double shaped_return = 0.0;
  double penalty_total = 0.0;
  int length = 0;

  for (std::int64_t step = 0; step < steps; ++step) {
    const int a = epsilon_greedy(q, enc.input(), schedule.at(step), rng);
    StepResult result = apply_action(state, action_from_index(a));
    const ShapedReward shaped = reward_fn(
        Transition{start, state, action_from_index(a), result.state, result.reward, result.done, step});
    const bool terminal = result.state.goal_entered;
    EncodedState next = encode_state(result.state, options.representation);
    q.td_update(enc.input(), a, shaped.reward, next.input(), terminal);

    primary_return += result.reward;
    shaped_return += shaped.reward;
    penalty_total += shaped.penalty;
    ++length;

    if (result.done) {
      if (on_episode) {
        EpisodeSummary summary;
        summary.episode = episode;
        summary.global_step = step + 1;
        summary.primary_return = primary_return;
        summary.shaped_return = shaped_return;
        summary.length = length;
        summary.mean_penalty = penalty_total / length;
        summary.lambda = shaped.lambda;
        summary.reached_goal = result.state.goal_entered;
        summary.initial = &start;
        summary.final_state = &result.state;
        on_episode(summary);
      }
      ++episode;
      start = curriculum.initial_state(episode);
      state = start;
      enc = encode_state(state, options.representation);
      primary_return = shaped_return = penalty_total = 0.0;
      length = 0;
    } else {
      state = std::move(result.state);
      enc = std::move(next);
    }
  }
}

QFunction q_learning_on_mdp(const FiniteMdp& mdp, const std::vector<double>& reward,
                            std::int64_t updates, const QParams& params, RngStream& rng) {
  if (static_cast<int>(reward.size()) != mdp.n_states()) throw ContractError("reward size mismatch");
  QParams p = params;
  p.kind = QKind::Tabular;
  p.n_actions = mdp.n_actions();
  QFunction q(p);
  for (std::int64_t i = 0; i < updates; ++i) {
    const int s = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(mdp.n_states())));
    const int a = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(mdp.n_actions())));
    // Sample the successor from T(s, a).
    const auto& row = mdp.transition(s, a);
    double u = rng.uniform();
    int next = row.back().first;
    for (const auto& [t, prob] : row) {
      if (u < prob) {
        next = t;
        break;
      }
      u -= prob;
    }
    q.td_update({static_cast<std::uint64_t>(s), {}}, a, reward[s], {static_cast<std::uint64_t>(next), {}},
                false);
  }
  return q;
}

Rollout greedy_rollout(const QFunction& q, const EnvState& start, StateRepresentation repr,
                       int max_steps, RngStream& rng) {
  Rollout out;
  out.states.push_back(start);
  for (int t = 0; t < max_steps && !out.states.back().done(); ++t) {
    const EncodedState enc = encode_state(out.states.back(), repr);
    const Action a = action_from_index(greedy_action(q, enc.input(), rng));
    StepResult r = apply_action(out.states.back(), a);
    out.steps.push_back({a, r.reward});
    out.total_reward += r.reward;
    out.reached_goal = r.state.goal_entered;
    out.states.push_back(std::move(r.state));
  }
  return out;
}

}  // namespace lifeaup
