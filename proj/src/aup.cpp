#include "lifeaup/aup.hpp"

#include <cmath>

#include "lifeaup/errors.hpp"
#include "lifeaup/metrics.hpp"

namespace lifeaup {

AupReward aup_reward(double primary, std::span<const QFunction> aux_qs, const StateInput& s, int action,
                     double lambda) {
  if (aux_qs.empty()) throw ContractError("aup_reward: empty auxiliary set");
  if (!(lambda >= 0.0)) throw ContractError("aup_reward: lambda must be nonnegative");
  AupReward out;
  out.penalty.gaps.reserve(aux_qs.size());
  double total = 0.0;
  for (const QFunction& q : aux_qs) {
    const double gap = std::abs(q.value(s, action) - q.value(s, action_index(kNoOp)));
    out.penalty.gaps.push_back(gap);
    total += gap;
  }
  out.penalty.mean = total / static_cast<double>(aux_qs.size());
  out.penalty.scaled = lambda * out.penalty.mean;
  out.reward = primary - out.penalty.scaled;
  return out;
}

double lambda_schedule(std::int64_t step, std::int64_t start_step, std::int64_t end_step,
                       double lambda_start, double lambda_final) {
  if (start_step > end_step) throw ContractError("lambda_schedule: start after end");
  if (step <= start_step) return lambda_start;
  if (step >= end_step) return lambda_final;
  const double frac = static_cast<double>(step - start_step) / static_cast<double>(end_step - start_step);
  return lambda_start + (lambda_final - lambda_start) * frac;
}

double naive_penalty(const EnvState& state, const EnvState& initial) {
  const Board& a = state.board;
  const Board& b = initial.board;
  if (a.width() != b.width() || a.height() != b.height()) {
    throw ContractError("naive_penalty: board dimensions differ");
  }
  int differing = 0;
  for (std::size_t i = 0; i < a.size(); ++i) differing += a.cells()[i] == b.cells()[i] ? 0 : 1;
  return differing;
}

RewardFn naive_reward_fn(NaiveForm form) {
  return [form](const Transition& t) {
    const double level = naive_penalty(t.after, t.episode_start);
    const double penalty = form == NaiveForm::Level ? level : level - naive_penalty(t.before, t.episode_start);
    return ShapedReward{t.primary_reward - penalty, penalty, 1.0};
  };
}

void AupConfig::validate() const {
  if (!(lambda_start >= 0.0) || !(lambda_final >= 0.0)) throw ContractError("lambda must be nonnegative");
  if (lambda_ramp && lambda_start > lambda_final) throw ContractError("lambda_start exceeds lambda_final");
  if (aux_count < 1) throw ContractError("aux_count must be >= 1");
  if (latent_dim < 1) throw ContractError("latent_dim must be >= 1");
  if (explore_steps < 0 || encoder_epochs < 0 || aux_steps < 0 || aup_steps < 0) {
    throw ContractError("phase budgets must be nonnegative");
  }
  if (source == AuxSource::Encoder && encoder_kind == EncoderKind::LinearWhitened &&
      latent_dim > kDownsampledDim) {
    throw ContractError("latent_dim exceeds the downsampled dimension");
  }
}

RewardFn auxiliary_reward_fn(const AuxReward& aux, double gamma) {
  return [&aux, gamma](const Transition& t) {
    double r = aux(observe(t.after));
    if (t.after.goal_entered) r += gamma * r / (1.0 - gamma);
    return ShapedReward{r, 0.0, 0.0};
  };
}

RewardFn aup_reward_fn(std::span<const QFunction> aux_qs, const AupConfig& config,
                       StateRepresentation repr) {
  const std::int64_t end = config.aup_steps > 0 ? config.aup_steps - 1 : 0;
  return [aux_qs, config, repr, end](const Transition& t) {
    const double lambda = config.lambda_ramp
                              ? lambda_schedule(t.step, 0, end, config.lambda_start, config.lambda_final)
                              : config.lambda_final;
    const EncodedState s = encode_state(t.before, repr);
    const AupReward r = aup_reward(t.primary_reward, aux_qs, s.input(), action_index(t.action), lambda);
    return ShapedReward{r.reward, r.penalty.scaled, lambda};
  };
}

AupResult train_aup(const Curriculum& curriculum, const AupConfig& config, const TrainOptions& options,
                    const RngStream& rng, const AupHooks& hooks) {
  config.validate();
  std::optional<Encoder> encoder;
  std::vector<AuxReward> aux_rewards;

  // Phase 1: exploration buffer and encoder.
  if (config.source == AuxSource::Encoder) {
    RngStream explore = rng.derive(rng_tag::kExploration);
    const auto buffer = collect_exploration_buffer(curriculum, static_cast<int>(config.explore_steps), explore);
    encoder = train_encoder(std::span<const Observation>(buffer), config.latent_dim, config.encoder_kind,
                            config.encoder_epochs);
    RngStream functionals = rng.derive(rng_tag::kFunctionals);
    for (auto& phi : draw_functionals(config.aux_count, encoder->latent_dim(), functionals)) {
      aux_rewards.emplace_back(*encoder, std::move(phi));
    }
  } else {
    for (int i = 0; i < config.aux_count; ++i) {
      const std::uint64_t seed = rng.derive(rng_tag::kFunctionals).derive(static_cast<std::uint64_t>(i)).seed();
      aux_rewards.emplace_back(Encoder::identity(), RandomProjection(kDownsampledDim, seed).weights());
    }
  }

  // Phase 2: one Q-function per auxiliary reward.
  std::vector<QFunction> aux_qs;
  aux_qs.reserve(aux_rewards.size());
  for (std::size_t i = 0; i < aux_rewards.size(); ++i) {
    RngStream aux_rng = rng.derive(rng_tag::kAuxiliary).derive(i);
    if (config.aux_steps > 0) {
      aux_qs.push_back(train_q(curriculum, auxiliary_reward_fn(aux_rewards[i], options.q.gamma),
                               config.aux_steps, options, aux_rng));
    } else {
      aux_qs.emplace_back(env_q_params(options));
    }
  }

  // Phase 3: AUP policy with the auxiliary Q-functions frozen.
  AupResult result{QFunction(env_q_params(options)), std::move(aux_qs), std::move(aux_rewards),
                   std::move(encoder), {}};
  if (config.aup_steps > 0) {
    RngStream policy_rng = rng.derive(rng_tag::kPolicy);
    const RewardFn reward = aup_reward_fn(result.aux_qs, config, options.representation);
    const double p_spawn = curriculum.rules().spawn_probability;
    train_q_into(result.policy, curriculum, reward, config.aup_steps, options, policy_rng,
                 [&](const EpisodeSummary& e) {
                   const std::uint64_t cf_seed =
                       episode_counterfactual_seed(hooks.counterfactual_seed, e.episode);
                   const double score = score_episode(e.initial->board, e.final_state->board, e.length,
                                                      cf_seed, p_spawn);
                   if (hooks.on_episode) hooks.on_episode(e, score);
                   EpisodeSummary stored = e;
                   stored.initial = nullptr;
                   stored.final_state = nullptr;
                   result.log.episodes.push_back(stored);
                   result.log.side_effects.push_back(score);
                 });
  }
  return result;
}

}  // namespace lifeaup
