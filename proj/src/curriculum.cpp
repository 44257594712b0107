#include "lifeaup/curriculum.hpp"

#include "lifeaup/errors.hpp"

namespace lifeaup {

Curriculum::Curriculum(TaskKind task, int n_env, std::uint64_t master_seed, const GenParams& params,
                       const EnvRules& rules)
    : task_(task), n_env_(n_env), master_seed_(master_seed), params_(params), rules_(rules) {
  if (n_env < 0) throw ContractError("n_env must be >= 1 or the fresh-every-episode sentinel");
  const RngStream generation = RngStream(master_seed).derive(rng_tag::kGeneration);
  for (int i = 0; i < n_env; ++i) {
    RngStream rng = generation.derive(static_cast<std::uint64_t>(i));
    environments_.push_back(generate_environment(task, params, rules, rng));
  }
}

Curriculum Curriculum::from_states(std::vector<EnvState> environments, std::uint64_t master_seed) {
  if (environments.empty()) throw ContractError("curriculum needs at least one environment");
  Curriculum c;
  c.task_ = environments.front().task;
  c.n_env_ = static_cast<int>(environments.size());
  c.master_seed_ = master_seed;
  c.rules_ = environments.front().rules;
  c.environments_ = std::move(environments);
  return c;
}

std::size_t Curriculum::slot(std::uint64_t episode) const {
  return fresh() ? 0 : static_cast<std::size_t>(episode % environments_.size());
}

EnvState Curriculum::initial_state(std::uint64_t episode) const {
  const RngStream dynamics =
      RngStream(master_seed_).derive(rng_tag::kDynamics).derive(episode);
  if (fresh()) {
    RngStream rng =
        RngStream(master_seed_).derive(rng_tag::kGeneration).derive(0x8000000000000000ULL | episode);
    EnvState s = generate_environment(task_, params_, rules_, rng);
    s.rng = dynamics;
    return s;
  }
  EnvState s = environments_[slot(episode)];
  s.rng = dynamics;
  return s;
}

}  // namespace lifeaup
