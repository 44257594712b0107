#include "lifeaup/theory.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "lifeaup/errors.hpp"
#include "lifeaup/format.hpp"

namespace lifeaup {

FiniteMdp::FiniteMdp(int n_states, int n_actions, double gamma)
    : n_states_(n_states), n_actions_(n_actions), gamma_(gamma) {
  if (n_states < 1 || n_actions < 1) throw ContractError("MDP needs at least one state and action");
  if (n_states > kMaxExactStates) throw ContractError("MDP too large for exact methods");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ContractError("gamma must lie in [0, 1)");
  rows_.assign(static_cast<std::size_t>(n_states) * n_actions, Distribution{});
}

void FiniteMdp::set_transition(int s, int a, Distribution next) {
  if (s < 0 || s >= n_states_ || a < 0 || a >= n_actions_) throw ContractError("transition index out of range");
  for (const auto& [t, p] : next) {
    if (t < 0 || t >= n_states_) throw ContractError("transition target out of range");
    if (!(p >= 0.0)) throw ContractError("negative transition probability");
  }
  rows_[static_cast<std::size_t>(s) * n_actions_ + a] = std::move(next);
}

const FiniteMdp::Distribution& FiniteMdp::transition(int s, int a) const {
  return rows_[static_cast<std::size_t>(s) * n_actions_ + a];
}

void FiniteMdp::validate() const {
  for (int s = 0; s < n_states_; ++s) {
    for (int a = 0; a < n_actions_; ++a) {
      double total = 0.0;
      for (const auto& [t, p] : transition(s, a)) total += p;
      if (std::abs(total - 1.0) > 1e-12) {
        throw ContractError("transition row (" + std::to_string(s) + ", " + std::to_string(a) +
                            ") sums to " + format_real(total));
      }
    }
  }
}

bool FiniteMdp::is_deterministic() const {
  for (const auto& row : rows_) {
    int support = 0;
    for (const auto& [t, p] : row) support += p > 0.0 ? 1 : 0;
    if (support != 1) return false;
  }
  return true;
}

int FiniteMdp::successor(int s, int a) const {
  for (const auto& [t, p] : transition(s, a)) {
    if (p > 0.0) return t;
  }
  throw ContractError("empty transition row");
}

ValueIterationResult value_iteration_detailed(const FiniteMdp& mdp, const std::vector<double>& reward,
                                              double tol) {
  if (!(tol > 0.0)) throw ContractError("value_iteration: tol must be positive");
  if (static_cast<int>(reward.size()) != mdp.n_states()) throw ContractError("value_iteration: reward size");
  mdp.validate();
  const double gamma = mdp.gamma();
  ValueIterationResult out;
  std::vector<double> v(reward.size(), 0.0);
  std::vector<double> next(reward.size());
  const double stop = gamma > 0.0 ? tol * (1.0 - gamma) / gamma : 0.0;
  for (;;) {
    double residual = 0.0;
    for (int s = 0; s < mdp.n_states(); ++s) {
      double best = -INFINITY;
      for (int a = 0; a < mdp.n_actions(); ++a) {
        double e = 0.0;
        for (const auto& [t, p] : mdp.transition(s, a)) e += p * v[t];
        best = std::max(best, e);
      }
      next[s] = reward[s] + gamma * best;
      residual = std::max(residual, std::abs(next[s] - v[s]));
    }
    v.swap(next);
    ++out.sweeps;
    out.residuals.push_back(residual);
    if (residual <= stop) break;
  }
  out.values = std::move(v);
  return out;
}

std::vector<double> value_iteration(const FiniteMdp& mdp, const std::vector<double>& reward, double tol) {
  return value_iteration_detailed(mdp, reward, tol).values;
}

std::vector<double> optimal_q(const FiniteMdp& mdp, const std::vector<double>& reward,
                              const std::vector<double>& values) {
  std::vector<double> q(static_cast<std::size_t>(mdp.n_states()) * mdp.n_actions());
  for (int s = 0; s < mdp.n_states(); ++s) {
    for (int a = 0; a < mdp.n_actions(); ++a) {
      double e = 0.0;
      for (const auto& [t, p] : mdp.transition(s, a)) e += p * values[t];
      q[static_cast<std::size_t>(s) * mdp.n_actions() + a] = reward[s] + mdp.gamma() * e;
    }
  }
  return q;
}

namespace {

std::vector<int> bfs_distances(const FiniteMdp& mdp, int source) {
  std::vector<int> dist(static_cast<std::size_t>(mdp.n_states()), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (int a = 0; a < mdp.n_actions(); ++a) {
      const int t = mdp.successor(s, a);
      if (dist[t] < 0) {
        dist[t] = dist[s] + 1;
        queue.push_back(t);
      }
    }
  }
  return dist;
}

void require_deterministic(const FiniteMdp& mdp) {
  mdp.validate();
  if (!mdp.is_deterministic()) {
    throw UnsupportedError("probability-1 reachability is only supported on deterministic MDPs");
  }
}

}  // namespace

std::optional<int> prob1_reach_steps(const FiniteMdp& mdp, int s, int target) {
  require_deterministic(mdp);
  if (s < 0 || target < 0 || s >= mdp.n_states() || target >= mdp.n_states()) {
    throw ContractError("state out of range");
  }
  const int d = bfs_distances(mdp, s)[target];
  return d < 0 ? std::nullopt : std::optional<int>(d);
}

std::vector<std::vector<int>> prob1_reach_table(const FiniteMdp& mdp) {
  require_deterministic(mdp);
  std::vector<std::vector<int>> table;
  table.reserve(static_cast<std::size_t>(mdp.n_states()));
  for (int s = 0; s < mdp.n_states(); ++s) table.push_back(bfs_distances(mdp, s));
  return table;
}

double communicability_bound(double gamma, int k) {
  return (1.0 - std::pow(gamma, k)) / (1.0 - gamma);
}

Prop1Report check_prop1(const FiniteMdp& mdp, int n_reward_samples, RngStream& rng, double tol) {
  if (n_reward_samples < 1) throw ContractError("check_prop1: need at least one reward sample");
  if (!(tol >= 0.0)) throw ContractError("check_prop1: negative tolerance");
  const auto reach = prob1_reach_table(mdp);
  const int n = mdp.n_states();
  const double gamma = mdp.gamma();
  const double outer = 1.0 / (1.0 - gamma);
  // Value iteration error well below the checking tolerance.
  const double vi_tol = std::max(1e-13, std::min(1e-10, tol * 1e-3));

  Prop1Report report;
  report.reward_samples = n_reward_samples;
  report.gamma = gamma;
  report.tolerance = tol;
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (reach[s][t] < 0 || reach[t][s] < 0) continue;
      Prop1Pair pair{s, t, reach[s][t], reach[t][s], 0.0, 0.0};
      pair.bound = communicability_bound(gamma, std::max(pair.k1, pair.k2));
      report.pairs.push_back(pair);
    }
  }

  auto check = [&](const std::vector<double>& values, const std::string& label, int only_s, int only_t) {
    for (Prop1Pair& pair : report.pairs) {
      if (only_s >= 0 && !(pair.s == only_s && pair.s_prime == only_t)) continue;
      const double gap = std::abs(values[pair.s] - values[pair.s_prime]);
      pair.max_gap = std::max(pair.max_gap, gap);
      if (gap > pair.bound + tol) {
        report.violations.push_back({pair.s, pair.s_prime, gap, pair.bound, label});
      } else if (pair.s != pair.s_prime && !(gap < outer)) {
        report.violations.push_back({pair.s, pair.s_prime, gap, outer, label + " (outer bound)"});
      }
    }
  };

  std::vector<double> reward(static_cast<std::size_t>(n));
  for (int i = 0; i < n_reward_samples; ++i) {
    for (double& r : reward) r = rng.uniform();
    check(value_iteration(mdp, reward, vi_tol), "sample " + std::to_string(i), -1, -1);
  }

  // Indicator rewards realize the extremal structure of the bound.
  std::vector<std::vector<double>> indicator_values(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    std::vector<double> r(static_cast<std::size_t>(n), 0.0);
    r[s] = 1.0;
    indicator_values[s] = value_iteration(mdp, r, vi_tol);
  }
  for (const Prop1Pair& pair : std::vector<Prop1Pair>(report.pairs)) {
    check(indicator_values[pair.s], "indicator s", pair.s, pair.s_prime);
    check(indicator_values[pair.s_prime], "indicator s'", pair.s, pair.s_prime);
  }
  return report;
}

std::string Prop1Report::to_text() const {
  std::ostringstream out;
  out << "prop1-report\n";
  out << "gamma " << format_real(gamma) << '\n';
  out << "reward_samples " << reward_samples << '\n';
  out << "tolerance " << format_real(tolerance) << '\n';
  out << "pairs " << pairs.size() << '\n';
  double tightest = 0.0;
  for (const auto& p : pairs) {
    if (p.bound > 0.0) tightest = std::max(tightest, p.max_gap / p.bound);
  }
  out << "max_gap_over_bound " << format_real(tightest, 9) << '\n';
  out << "violations " << violations.size() << '\n';
  for (const auto& v : violations) {
    out << "violation s=" << v.s << " s'=" << v.s_prime << " gap=" << format_real(v.gap, 12)
        << " bound=" << format_real(v.bound, 12) << " reward=" << v.reward << '\n';
  }
  out << "status " << (ok() ? "ok" : "violated") << '\n';
  return out.str();
}

FiniteMdp random_deterministic_mdp(int n_states, int n_actions, double gamma, RngStream& rng) {
  FiniteMdp mdp(n_states, n_actions, gamma);
  for (int s = 0; s < n_states; ++s) {
    for (int a = 0; a < n_actions; ++a) {
      mdp.set_deterministic(s, a, static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n_states))));
    }
  }
  return mdp;
}

FiniteMdp line_mdp(int n_states, double gamma) {
  FiniteMdp mdp(n_states, 3, gamma);
  for (int s = 0; s < n_states; ++s) {
    mdp.set_deterministic(s, 0, s);
    mdp.set_deterministic(s, 1, std::min(s + 1, n_states - 1));
    mdp.set_deterministic(s, 2, std::max(s - 1, 0));
  }
  return mdp;
}

}  // namespace lifeaup
