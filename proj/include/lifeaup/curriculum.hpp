#pragma once

#include <cstdint>
#include <vector>

#include "lifeaup/levelgen.hpp"

namespace lifeaup {

/// An ordered set of generated levels cycled round-robin by episode index.
///
/// With `n_env == kFreshEveryEpisode` each episode index generates its own
/// level. Episode `e` always starts from the same board with a dynamics
/// stream derived from (master seed, e), so resets are stateless.
class Curriculum {
 public:
  static constexpr int kFreshEveryEpisode = 0;

  Curriculum(TaskKind task, int n_env, std::uint64_t master_seed, const GenParams& params = {},
             const EnvRules& rules = {});

  // Wraps hand-built levels (fixtures); `master_seed` drives the dynamics streams.
  static Curriculum from_states(std::vector<EnvState> environments, std::uint64_t master_seed);

  EnvState initial_state(std::uint64_t episode) const;

  // Environment slot that episode `episode` starts in.
  std::size_t slot(std::uint64_t episode) const;

  TaskKind task() const { return task_; }
  bool fresh() const { return n_env_ == kFreshEveryEpisode; }
  // Number of distinct slots; 1 in fresh mode.
  std::size_t slots() const { return fresh() ? 1 : environments_.size(); }
  std::uint64_t master_seed() const { return master_seed_; }
  const std::vector<EnvState>& environments() const { return environments_; }
  const GenParams& gen_params() const { return params_; }
  const EnvRules& rules() const { return rules_; }

 private:
  Curriculum() = default;

  TaskKind task_ = TaskKind::AppendStillEasy;
  int n_env_ = 1;
  std::uint64_t master_seed_ = 0;
  GenParams params_;
  EnvRules rules_;
  std::vector<EnvState> environments_;
};

}  // namespace lifeaup
