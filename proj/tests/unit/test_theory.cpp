#include <cmath>

#include "doctest.h"
#include "lifeaup/errors.hpp"
#include "lifeaup/theory.hpp"

using namespace lifeaup;

namespace {

// Plain synchronous Bellman sweeps until nothing moves.
std::vector<double> bellman_oracle(const FiniteMdp& mdp, const std::vector<double>& r) {
  std::vector<double> v(r.size(), 0.0);
  for (int it = 0; it < 20000; ++it) {
    std::vector<double> next(v.size());
    for (int s = 0; s < mdp.n_states(); ++s) {
      double best = -1e300;
      for (int a = 0; a < mdp.n_actions(); ++a) {
        double e = 0.0;
        for (auto [t, p] : mdp.transition(s, a)) e += p * v[t];
        best = std::max(best, e);
      }
      next[s] = r[s] + mdp.gamma() * best;
    }
    v = next;
  }
  return v;
}

// s_0 -> s_1 -> ... -> s_{n-1}, the last state absorbing.
FiniteMdp one_way_chain(int n, double gamma) {
  FiniteMdp m(n, 1, gamma);
  for (int s = 0; s < n; ++s) m.set_deterministic(s, 0, std::min(s + 1, n - 1));
  return m;
}

}  // namespace

TEST_CASE("value iteration hand values") {
  FiniteMdp loop(1, 1, 0.5);
  loop.set_deterministic(0, 0, 0);
  CHECK(value_iteration(loop, {1.0}, 1e-12)[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(value_iteration(loop, {0.0}, 1e-12)[0] == 0.0);

  const FiniteMdp chain = one_way_chain(3, 0.9);
  const auto v = value_iteration(chain, {0.0, 0.0, 1.0}, 1e-12);
  CHECK(v[2] == doctest::Approx(10.0).epsilon(1e-10));
  CHECK(v[1] == doctest::Approx(9.0).epsilon(1e-10));
  CHECK(v[0] == doctest::Approx(8.1).epsilon(1e-10));
}

TEST_CASE("value iteration matches the Bellman oracle and its stopping bound") {
  RngStream rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const double gamma = trial % 2 == 0 ? 0.9 : 0.5;
    FiniteMdp m(6, 3, gamma);
    for (int s = 0; s < 6; ++s) {
      for (int a = 0; a < 3; ++a) {
        const int t1 = static_cast<int>(rng.uniform_int(6));
        const int t2 = static_cast<int>(rng.uniform_int(6));
        const double p = rng.uniform();
        m.set_transition(s, a, t1 == t2 ? FiniteMdp::Distribution{{t1, 1.0}}
                                        : FiniteMdp::Distribution{{t1, p}, {t2, 1.0 - p}});
      }
    }
    std::vector<double> r(6);
    for (double& x : r) x = rng.uniform();
    const auto expected = bellman_oracle(m, r);
    const auto detailed = value_iteration_detailed(m, r, 1e-6);
    for (int s = 0; s < 6; ++s) CHECK(std::abs(detailed.values[s] - expected[s]) <= 1e-6);
    CHECK(detailed.sweeps == static_cast<int>(detailed.residuals.size()));
  }
}

TEST_CASE("optimal Q is consistent with V") {
  RngStream rng(5);
  const FiniteMdp m = random_deterministic_mdp(5, 3, 0.8, rng);
  const std::vector<double> r = {0.1, 0.9, 0.3, 0.0, 0.5};
  const auto v = value_iteration(m, r, 1e-12);
  const auto q = optimal_q(m, r, v);
  for (int s = 0; s < 5; ++s) {
    double best = -1e300;
    for (int a = 0; a < 3; ++a) best = std::max(best, q[s * 3 + a]);
    CHECK(best == doctest::Approx(v[s]).epsilon(1e-10));
  }
}

TEST_CASE("mdp validation") {
  FiniteMdp m(2, 1, 0.9);
  CHECK_THROWS_AS(m.validate(), ContractError);
  m.set_deterministic(0, 0, 1);
  m.set_transition(1, 0, {{0, 0.5}, {1, 0.4}});
  CHECK_THROWS_AS(m.validate(), ContractError);
  CHECK_THROWS_AS(FiniteMdp(2, 1, 1.0), ContractError);
  CHECK_THROWS_AS(m.set_deterministic(0, 0, 2), ContractError);
}

TEST_CASE("prob-1 reachability") {
  FiniteMdp cycle(2, 1, 0.5);
  cycle.set_deterministic(0, 0, 1);
  cycle.set_deterministic(1, 0, 0);
  CHECK(prob1_reach_steps(cycle, 0, 0) == 0);
  CHECK(prob1_reach_steps(cycle, 0, 1) == 1);
  CHECK(prob1_reach_steps(cycle, 1, 0) == 1);

  const FiniteMdp chain = one_way_chain(4, 0.9);
  CHECK(prob1_reach_steps(chain, 0, 3) == 3);
  CHECK_FALSE(prob1_reach_steps(chain, 3, 0).has_value());
  const auto table = prob1_reach_table(chain);
  CHECK(table[0][3] == 3);
  CHECK(table[3][0] == -1);

  FiniteMdp noisy(2, 1, 0.5);
  noisy.set_transition(0, 0, {{0, 0.5}, {1, 0.5}});
  noisy.set_deterministic(1, 0, 1);
  CHECK_THROWS_AS(prob1_reach_steps(noisy, 0, 1), UnsupportedError);
}

TEST_CASE("communicability bound") {
  CHECK(communicability_bound(0.5, 0) == 0.0);
  CHECK(communicability_bound(0.5, 1) == doctest::Approx(1.0));
  CHECK(communicability_bound(0.9, 3) == doctest::Approx((1 - 0.729) / 0.1));
}

TEST_CASE("proposition check on a two-state cycle") {
  FiniteMdp cycle(2, 1, 0.5);
  cycle.set_deterministic(0, 0, 1);
  cycle.set_deterministic(1, 0, 0);
  RngStream rng(1);
  const Prop1Report report = check_prop1(cycle, 10000, rng, 1e-9);
  CHECK(report.ok());
  for (const Prop1Pair& p : report.pairs) {
    if (p.s == p.s_prime) {
      CHECK(p.bound == 0.0);
      CHECK(p.max_gap == 0.0);
    } else {
      CHECK(p.bound == doctest::Approx(1.0));
      CHECK(p.max_gap <= 1.0 + 1e-9);
    }
  }
  CHECK(report.to_text().find("status ok") != std::string::npos);
}

TEST_CASE("indicator reward on a one-way chain meets the bound") {
  for (double gamma : {0.5, 0.9, 0.97}) {
    for (int k = 1; k <= 6; ++k) {
      const FiniteMdp chain = one_way_chain(k + 1, gamma);
      std::vector<double> r(k + 1, 0.0);
      r[k] = 1.0;
      const auto v = value_iteration(chain, r, 1e-12);
      const double gap = v[k] - v[0];
      CHECK(gap == doctest::Approx(communicability_bound(gamma, k)).epsilon(1e-9));
    }
  }
}

TEST_CASE("line fixture reaches the bound and random MDPs respect it") {
  const FiniteMdp line = line_mdp(5, 0.9);
  RngStream rng(2);
  const Prop1Report report = check_prop1(line, 20, rng, 1e-9);
  CHECK(report.ok());
  double best_ratio = 0.0;
  for (const Prop1Pair& p : report.pairs) {
    if (p.bound > 0) best_ratio = std::max(best_ratio, p.max_gap / p.bound);
  }
  CHECK(best_ratio >= 0.95);

  for (int i = 0; i < 10; ++i) {
    RngStream m = rng.derive(static_cast<std::uint64_t>(i));
    const FiniteMdp mdp = random_deterministic_mdp(8, 3, 0.97, m);
    CHECK(check_prop1(mdp, 30, m, 1e-6).ok());
  }
}
