#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lifeaup/rng.hpp"

namespace lifeaup {

// What a Q-function sees of a state: a tabular key and/or a feature vector.
struct StateInput {
  std::uint64_t key = 0;
  std::span<const double> features;
};

enum class QKind : std::uint8_t { Tabular, Linear };
enum class StepSizeDecay : std::uint8_t { None, InverseSqrtVisits };

std::string_view q_kind_name(QKind kind);
QKind parse_q_kind(std::string_view name);

struct QParams {
  QKind kind = QKind::Tabular;
  int n_actions = 9;
  double gamma = 0.97;
  double alpha = 0.1;
  StepSizeDecay decay = StepSizeDecay::InverseSqrtVisits;
  double initial_value = 0.0;  // tabular q0
  int feature_dim = 0;         // linear only
};

/// Action-value function, tabular over state keys or linear over features.
///
/// Tabular lookups of unseen keys return `initial_value`. The linear form is
/// Q(s, a) = w_a . features(s) with no implicit bias term.
class QFunction {
 public:
  explicit QFunction(const QParams& params);

  const QParams& params() const { return params_; }
  int n_actions() const { return params_.n_actions; }

  double value(const StateInput& s, int action) const;
  void values(const StateInput& s, std::span<double> out) const;
  double max_value(const StateInput& s) const;

  /// One Q-learning backup:
  /// target = r + (terminal ? 0 : gamma * max_a' Q(s', a')),
  /// Q(s, a) += alpha_n * (target - Q(s, a)).
  /// The linear kind takes the matching semi-gradient step on w_a.
  void td_update(const StateInput& s, int action, double reward, const StateInput& next,
                 bool terminal);

  // Step size for the next update of (s, a).
  double step_size(const StateInput& s, int action) const;

  std::size_t table_size() const { return table_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  std::vector<double>& weights() { return weights_; }

  // Text snapshot: sorted key/value listing (tabular) or row-major
  // coefficients (linear). Visit counts are not stored.
  std::string serialize() const;
  static QFunction parse(std::string_view text);

  bool same_values(const QFunction& other) const;

 private:
  struct Entry {
    std::vector<double> q;
    std::vector<std::uint32_t> visits;
  };

  Entry& entry(std::uint64_t key);
  void check_input(const StateInput& s) const;

  QParams params_;
  std::unordered_map<std::uint64_t, Entry> table_;
  std::vector<double> weights_;             // n_actions x feature_dim
  std::vector<std::uint32_t> linear_visits_;  // per action
};

// Uniform with probability epsilon, otherwise greedy with ties broken
// uniformly at random.
int epsilon_greedy(const QFunction& q, const StateInput& s, double epsilon, RngStream& rng);

// Greedy action with ties broken uniformly at random.
int greedy_action(const QFunction& q, const StateInput& s, RngStream& rng);

struct EpsilonSchedule {
  double start = 1.0;
  double end = 0.05;
  std::int64_t anneal_steps = 1;

  double at(std::int64_t step) const;
};

}  // namespace lifeaup
