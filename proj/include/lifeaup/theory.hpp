#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lifeaup/rng.hpp"

namespace lifeaup {

/// Finite rewardless MDP <S, A, T, gamma> with tabulated transitions.
class FiniteMdp {
 public:
  using Distribution = std::vector<std::pair<int, double>>;  // (next state, probability)

  FiniteMdp(int n_states, int n_actions, double gamma);

  void set_transition(int s, int a, Distribution next);
  void set_deterministic(int s, int a, int next) { set_transition(s, a, {{next, 1.0}}); }

  const Distribution& transition(int s, int a) const;
  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }
  double gamma() const { return gamma_; }

  bool is_deterministic() const;
  // Throws ContractError if any row is not a distribution (within 1e-12).
  void validate() const;

  // Successor of (s, a); deterministic MDPs only.
  int successor(int s, int a) const;

 private:
  int n_states_;
  int n_actions_;
  double gamma_;
  std::vector<Distribution> rows_;
};

inline constexpr int kMaxExactStates = 10000;

struct ValueIterationResult {
  std::vector<double> values;
  int sweeps = 0;
  std::vector<double> residuals;  // sup-norm change per sweep
};

/// Optimal state values for the state reward r:
/// V(s) = r(s) + gamma * max_a sum_s' T(s, a, s') V(s').
/// Stops once the sweep residual drops below tol * (1 - gamma) / gamma, which
/// bounds the distance to the fixed point by tol.
ValueIterationResult value_iteration_detailed(const FiniteMdp& mdp, const std::vector<double>& reward,
                                              double tol);
std::vector<double> value_iteration(const FiniteMdp& mdp, const std::vector<double>& reward, double tol);

// Q*(s, a) = r(s) + gamma * E[V*(s')], row-major |S| x |A|.
std::vector<double> optimal_q(const FiniteMdp& mdp, const std::vector<double>& reward,
                              const std::vector<double>& values);

// Shortest number of steps with which s reaches target with probability 1.
// Deterministic MDPs only; throws UnsupportedError otherwise.
std::optional<int> prob1_reach_steps(const FiniteMdp& mdp, int s, int target);

// All-pairs version of prob1_reach_steps (-1 for unreachable).
std::vector<std::vector<int>> prob1_reach_table(const FiniteMdp& mdp);

// (1 - gamma^k) / (1 - gamma).
double communicability_bound(double gamma, int k);

struct Prop1Pair {
  int s = 0;
  int s_prime = 0;
  int k1 = 0;  // steps s -> s'
  int k2 = 0;  // steps s' -> s
  double bound = 0.0;
  double max_gap = 0.0;  // over sampled and indicator rewards
};

struct Prop1Violation {
  int s = 0;
  int s_prime = 0;
  double gap = 0.0;
  double bound = 0.0;
  std::string reward;  // "sample <i>", "indicator s" or "indicator s'"
};

struct Prop1Report {
  std::vector<Prop1Pair> pairs;
  std::vector<Prop1Violation> violations;
  int reward_samples = 0;
  double gamma = 0.0;
  double tolerance = 0.0;

  bool ok() const { return violations.empty(); }
  std::string to_text() const;
};

/// Checks max |V*_R(s) - V*_R(s')| <= (1 - gamma^max(k1, k2)) / (1 - gamma) for
/// every ordered pair of mutually reachable states, over `n_reward_samples`
/// rewards uniform on [0, 1]^S plus the indicator rewards of s and s'. Also
/// checks the strict outer bound 1 / (1 - gamma).
Prop1Report check_prop1(const FiniteMdp& mdp, int n_reward_samples, RngStream& rng, double tol);

// Random deterministic MDP whose successors are uniform over states.
FiniteMdp random_deterministic_mdp(int n_states, int n_actions, double gamma, RngStream& rng);

// Line of n states with actions {stay, forward, back}: state 0 and n-1 are
// mutually reachable in n-1 steps.
FiniteMdp line_mdp(int n_states, double gamma);

}  // namespace lifeaup
