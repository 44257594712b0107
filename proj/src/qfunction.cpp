#include "lifeaup/qfunction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "lifeaup/errors.hpp"
#include "lifeaup/format.hpp"

namespace lifeaup {

std::string_view q_kind_name(QKind kind) { return kind == QKind::Linear ? "linear" : "tabular"; }

QKind parse_q_kind(std::string_view name) {
  if (name == "tabular") return QKind::Tabular;
  if (name == "linear") return QKind::Linear;
  throw ContractError("unknown q kind '" + std::string(name) + "'");
}

QFunction::QFunction(const QParams& params) : params_(params) {
  if (params.n_actions < 1) throw ContractError("QFunction needs at least one action");
  if (!(params.gamma >= 0.0 && params.gamma < 1.0)) throw ContractError("gamma must lie in [0, 1)");
  if (!(params.alpha > 0.0) || !std::isfinite(params.alpha)) throw ContractError("alpha must be positive");
  if (!std::isfinite(params.initial_value)) throw ContractError("q0 must be finite");
  if (params.kind == QKind::Linear) {
    if (params.feature_dim < 1) throw ContractError("linear QFunction needs feature_dim >= 1");
    weights_.assign(static_cast<std::size_t>(params.n_actions) * params.feature_dim, 0.0);
    linear_visits_.assign(static_cast<std::size_t>(params.n_actions), 0);
  }
}

void QFunction::check_input(const StateInput& s) const {
  if (params_.kind == QKind::Linear) {
    if (static_cast<int>(s.features.size()) != params_.feature_dim) {
      throw ContractError("feature dimension mismatch");
    }
    for (double f : s.features) {
      if (!std::isfinite(f)) throw ContractError("non-finite feature");
    }
  }
}

double QFunction::value(const StateInput& s, int action) const {
  if (action < 0 || action >= params_.n_actions) throw ContractError("action out of range");
  if (params_.kind == QKind::Tabular) {
    const auto it = table_.find(s.key);
    return it == table_.end() ? params_.initial_value : it->second.q[action];
  }
  check_input(s);
  const double* w = &weights_[static_cast<std::size_t>(action) * params_.feature_dim];
  double v = 0.0;
  for (int i = 0; i < params_.feature_dim; ++i) v += w[i] * s.features[i];
  return v;
}

void QFunction::values(const StateInput& s, std::span<double> out) const {
  if (static_cast<int>(out.size()) != params_.n_actions) throw ContractError("values: wrong output size");
  if (params_.kind == QKind::Tabular) {
    const auto it = table_.find(s.key);
    if (it == table_.end()) {
      std::fill(out.begin(), out.end(), params_.initial_value);
    } else {
      std::copy(it->second.q.begin(), it->second.q.end(), out.begin());
    }
    return;
  }
  for (int a = 0; a < params_.n_actions; ++a) out[a] = value(s, a);
}

double QFunction::max_value(const StateInput& s) const {
  std::vector<double> v(static_cast<std::size_t>(params_.n_actions));
  values(s, v);
  return *std::max_element(v.begin(), v.end());
}

QFunction::Entry& QFunction::entry(std::uint64_t key) {
  auto [it, inserted] = table_.try_emplace(key);
  if (inserted) {
    it->second.q.assign(static_cast<std::size_t>(params_.n_actions), params_.initial_value);
    it->second.visits.assign(static_cast<std::size_t>(params_.n_actions), 0);
  }
  return it->second;
}

double QFunction::step_size(const StateInput& s, int action) const {
  if (params_.decay == StepSizeDecay::None) return params_.alpha;
  std::uint32_t visits = 0;
  if (params_.kind == QKind::Tabular) {
    const auto it = table_.find(s.key);
    if (it != table_.end()) visits = it->second.visits[action];
  } else {
    visits = linear_visits_[action];
  }
  return params_.alpha / std::sqrt(static_cast<double>(visits) + 1.0);
}

void QFunction::td_update(const StateInput& s, int action, double reward, const StateInput& next,
                          bool terminal) {
  if (action < 0 || action >= params_.n_actions) throw ContractError("action out of range");
  if (!std::isfinite(reward)) throw ContractError("non-finite reward");
  check_input(s);
  if (!terminal) check_input(next);

  const double target = reward + (terminal ? 0.0 : params_.gamma * max_value(next));
  const double alpha = step_size(s, action);
  if (params_.kind == QKind::Tabular) {
    Entry& e = entry(s.key);
    e.q[action] += alpha * (target - e.q[action]);
    ++e.visits[action];
    return;
  }
  const double error = target - value(s, action);
  double* w = &weights_[static_cast<std::size_t>(action) * params_.feature_dim];
  for (int i = 0; i < params_.feature_dim; ++i) w[i] += alpha * error * s.features[i];
  ++linear_visits_[action];
}

bool QFunction::same_values(const QFunction& other) const {
  if (params_.kind != other.params_.kind || params_.n_actions != other.params_.n_actions) return false;
  if (params_.kind == QKind::Linear) return weights_ == other.weights_;
  if (table_.size() != other.table_.size()) return false;
  for (const auto& [key, e] : table_) {
    const auto it = other.table_.find(key);
    if (it == other.table_.end() || it->second.q != e.q) return false;
  }
  return true;
}

std::string QFunction::serialize() const {
  std::ostringstream out;
  out << "lifeaup-q 1\n";
  out << "kind " << q_kind_name(params_.kind) << '\n';
  out << "n_actions " << params_.n_actions << '\n';
  out << "gamma " << format_real(params_.gamma) << '\n';
  out << "alpha " << format_real(params_.alpha) << '\n';
  out << "decay " << (params_.decay == StepSizeDecay::None ? "none" : "inv-sqrt") << '\n';
  out << "q0 " << format_real(params_.initial_value) << '\n';
  if (params_.kind == QKind::Linear) {
    out << "feature_dim " << params_.feature_dim << '\n';
    for (int a = 0; a < params_.n_actions; ++a) {
      out << "w " << join_reals(std::span<const double>(weights_).subspan(
                         static_cast<std::size_t>(a) * params_.feature_dim, params_.feature_dim))
          << '\n';
    }
  } else {
    const std::map<std::uint64_t, const Entry*> sorted = [&] {
      std::map<std::uint64_t, const Entry*> m;
      for (const auto& [k, e] : table_) m.emplace(k, &e);
      return m;
    }();
    out << "entries " << sorted.size() << '\n';
    for (const auto& [k, e] : sorted) out << "s " << k << ' ' << join_reals(e->q) << '\n';
  }
  return out.str();
}

QFunction QFunction::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  QParams p;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::uint64_t, std::vector<double>>> entries;
  bool header = false;
  std::vector<std::string> seen;
  auto fail = [&](const std::string& what) -> void { throw ParseError(line_no, 1, "q snapshot: " + what); };
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_whitespace(line);
    if (tokens.empty()) continue;
    const std::string key(tokens.front());
    seen.push_back(key);
    try {
      if (!header) {
        if (key != "lifeaup-q" || tokens.size() != 2 || tokens[1] != "1") fail("missing 'lifeaup-q 1' header");
        header = true;
      } else if (key == "kind") {
        p.kind = parse_q_kind(tokens.at(1));
      } else if (key == "n_actions") {
        p.n_actions = static_cast<int>(parse_integer(tokens.at(1), key));
      } else if (key == "gamma") {
        p.gamma = parse_real(tokens.at(1), key);
      } else if (key == "alpha") {
        p.alpha = parse_real(tokens.at(1), key);
      } else if (key == "decay") {
        p.decay = tokens.at(1) == "none" ? StepSizeDecay::None : StepSizeDecay::InverseSqrtVisits;
      } else if (key == "q0") {
        p.initial_value = parse_real(tokens.at(1), key);
      } else if (key == "feature_dim") {
        p.feature_dim = static_cast<int>(parse_integer(tokens.at(1), key));
      } else if (key == "w") {
        std::vector<double> row;
        for (std::size_t i = 1; i < tokens.size(); ++i) row.push_back(parse_real(tokens[i], key));
        rows.push_back(std::move(row));
      } else if (key == "entries") {
      } else if (key == "s") {
        if (tokens.size() < 2) fail("entry without key");
        const std::string k(tokens[1]);
        std::size_t used = 0;
        const std::uint64_t state = std::stoull(k, &used);
        if (used != k.size()) fail("bad state key");
        std::vector<double> q;
        for (std::size_t i = 2; i < tokens.size(); ++i) q.push_back(parse_real(tokens[i], key));
        entries.emplace_back(state, std::move(q));
      } else {
        fail("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& ex) {
      fail(ex.what());
    } catch (const std::out_of_range&) {
      fail("missing value");
    } catch (const ContractError& ex) {
      fail(ex.what());
    }
  }
  if (!header) throw ParseError(1, 1, "q snapshot: empty input");
  for (const char* required : {"kind", "n_actions", "gamma", "alpha", "decay", "q0"}) {
    if (std::find(seen.begin(), seen.end(), required) == seen.end()) {
      fail(std::string("missing '") + required + "'");
    }
  }
  QFunction q(p);
  if (p.kind == QKind::Linear) {
    if (static_cast<int>(rows.size()) != p.n_actions) fail("expected one weight row per action");
    for (int a = 0; a < p.n_actions; ++a) {
      if (static_cast<int>(rows[a].size()) != p.feature_dim) fail("weight row has wrong length");
      std::copy(rows[a].begin(), rows[a].end(),
                q.weights_.begin() + static_cast<std::ptrdiff_t>(a) * p.feature_dim);
    }
  } else {
    for (auto& [k, values] : entries) {
      if (static_cast<int>(values.size()) != p.n_actions) fail("entry has wrong action count");
      q.entry(k).q = std::move(values);
    }
  }
  return q;
}

int greedy_action(const QFunction& q, const StateInput& s, RngStream& rng) {
  std::vector<double> v(static_cast<std::size_t>(q.n_actions()));
  q.values(s, v);
  const double best = *std::max_element(v.begin(), v.end());
  int ties = 0;
  for (double x : v) ties += x == best ? 1 : 0;
  if (ties == 1) {
    return static_cast<int>(std::find(v.begin(), v.end(), best) - v.begin());
  }
  auto pick = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(ties)));
  for (int a = 0; a < q.n_actions(); ++a) {
    if (v[a] == best && pick-- == 0) return a;
  }
  return 0;
}

int epsilon_greedy(const QFunction& q, const StateInput& s, double epsilon, RngStream& rng) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ContractError("epsilon outside [0, 1]");
  if (epsilon > 0.0 && rng.uniform() < epsilon) {
    return static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(q.n_actions())));
  }
  return greedy_action(q, s, rng);
}

double EpsilonSchedule::at(std::int64_t step) const {
  if (anneal_steps <= 0 || step >= anneal_steps) return end;
  const double frac = static_cast<double>(step) / static_cast<double>(anneal_steps);
  return start + (end - start) * frac;
}

}  // namespace lifeaup
