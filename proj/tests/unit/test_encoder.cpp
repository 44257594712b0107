#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "lifeaup/encoder.hpp"
#include "lifeaup/errors.hpp"
#include "lifeaup/log.hpp"
#include "lifeaup/qlearning.hpp"

using namespace lifeaup;

namespace {

std::vector<FeatureVector> random_buffer(int n, RngStream& rng) {
  std::vector<FeatureVector> out;
  for (int i = 0; i < n; ++i) {
    FeatureVector f(kDownsampledDim);
    for (double& v : f) v = rng.uniform();
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

TEST_CASE("identity encoder passes features through") {
  const Encoder e = Encoder::identity();
  FeatureVector f(kDownsampledDim);
  for (int i = 0; i < kDownsampledDim; ++i) f[i] = i * 0.01;
  CHECK(e.encode(f) == f);
  CHECK(e.latent_dim() == kDownsampledDim);
}

TEST_CASE("whitened projection has unit variance and normalized range") {
  RngStream rng(6);
  const auto buffer = random_buffer(400, rng);
  const Encoder e = train_encoder(std::span<const FeatureVector>(buffer), 3, EncoderKind::LinearWhitened);
  CHECK(e.latent_dim() == 3);
  CHECK(e.padded_dims() == 0);
  std::vector<std::vector<double>> proj(3);
  for (const auto& f : buffer) {
    const FeatureVector z = e.project(f);
    for (int k = 0; k < 3; ++k) proj[k].push_back(z[k]);
    for (double v : e.encode(f)) {
      CHECK(v >= -1e-12);
      CHECK(v <= 1.0 + 1e-12);
    }
  }
  for (int k = 0; k < 3; ++k) {
    const double mean = std::accumulate(proj[k].begin(), proj[k].end(), 0.0) / proj[k].size();
    double var = 0.0;
    for (double v : proj[k]) var += (v - mean) * (v - mean);
    var /= proj[k].size();
    CHECK(mean == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(var == doctest::Approx(1.0).epsilon(1e-6));
  }
  // Directions are uncorrelated on the training data.
  double cov = 0.0;
  for (std::size_t i = 0; i < buffer.size(); ++i) cov += proj[0][i] * proj[1][i];
  CHECK(cov / buffer.size() == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("one varying axis is recovered monotonically") {
  std::vector<FeatureVector> buffer;
  for (int i = 0; i < 50; ++i) {
    FeatureVector f(kDownsampledDim, 0.3);
    f[7] = (i * 37 % 50) / 50.0;
    buffer.push_back(f);
  }
  const Encoder e = train_encoder(std::span<const FeatureVector>(buffer), 1, EncoderKind::LinearWhitened);
  std::vector<std::pair<double, double>> pairs;
  for (const auto& f : buffer) pairs.emplace_back(f[7], e.encode(f)[0]);
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 1; i < pairs.size(); ++i) CHECK(pairs[i].second > pairs[i - 1].second);
  CHECK(pairs.front().second == doctest::Approx(0.0));
  CHECK(pairs.back().second == doctest::Approx(1.0));
}

TEST_CASE("degenerate buffer pads and warns") {
  std::vector<std::string> warnings;
  set_warning_sink([&](std::string_view m) { warnings.emplace_back(m); });
  const std::vector<FeatureVector> buffer(10, FeatureVector(kDownsampledDim, 0.5));
  const Encoder e = train_encoder(std::span<const FeatureVector>(buffer), 2, EncoderKind::LinearWhitened);
  set_warning_sink(nullptr);
  CHECK(e.padded_dims() == 2);
  CHECK_FALSE(warnings.empty());
  FeatureVector other(kDownsampledDim, 0.1);
  CHECK(e.encode(buffer[0]) == e.encode(buffer[3]));
  CHECK(e.encode(other).size() == 2);
  CHECK_THROWS_AS(train_encoder(std::span<const FeatureVector>(), 1, EncoderKind::LinearWhitened), ContractError);
}

TEST_CASE("encoder snapshot round trip") {
  RngStream rng(2);
  const auto buffer = random_buffer(60, rng);
  const Encoder e = train_encoder(std::span<const FeatureVector>(buffer), 2, EncoderKind::LinearWhitened);
  const Encoder back = Encoder::parse(e.serialize());
  CHECK(back == e);
  CHECK(back.encode(buffer[5]) == e.encode(buffer[5]));
  CHECK(Encoder::parse(Encoder::identity().serialize()) == Encoder::identity());
  CHECK_THROWS(Encoder::parse("lifeaup-encoder 2\n"));
}

TEST_CASE("exploration buffer sizes and determinism") {
  const Curriculum c(TaskKind::AppendStillEasy, 8, 3);
  RngStream a(1);
  RngStream b(1);
  const auto small = collect_exploration_buffer(c, 8, a);
  CHECK(small.size() == 8);
  const auto again = collect_exploration_buffer(c, 8, b);
  CHECK(small == again);
  RngStream d(5);
  CHECK(collect_exploration_buffer(c, 2000, d).size() == 2000);
}

TEST_CASE("held-out outputs stay near the buffer range") {
  const Curriculum c(TaskKind::AppendStillEasy, 4, 21);
  RngStream rng(21);
  const auto buffer = collect_exploration_buffer(c, 2000, rng);
  const Encoder e = train_encoder(std::span<const Observation>(buffer), 1, EncoderKind::LinearWhitened);
  RngStream held(22);
  const auto holdout = collect_exploration_buffer(c, 1000, held);
  for (const Observation& o : holdout) {
    const double z = e.encode(o)[0];
    CHECK(z >= -0.1);
    CHECK(z <= 1.1);
  }
}

TEST_CASE("auxiliary reward composes functional and encoder") {
  RngStream rng(4);
  const auto phis = draw_functionals(3, 2, rng);
  REQUIRE(phis.size() == 3);
  for (const auto& phi : phis) {
    REQUIRE(phi.size() == 2);
    for (double v : phi) {
      CHECK(v > 0.0);
      CHECK(v < 1.0);
    }
  }
  const auto buffer = random_buffer(40, rng);
  const Encoder e = train_encoder(std::span<const FeatureVector>(buffer), 2, EncoderKind::LinearWhitened);
  const AuxReward r(e, phis[0]);
  const FeatureVector z = e.encode(buffer[0]);
  CHECK(r.from_features(buffer[0]) == doctest::Approx(phis[0][0] * z[0] + phis[0][1] * z[1]));
  CHECK_THROWS_AS(AuxReward(e, {0.5}), ContractError);
}

TEST_CASE("auxiliary greedy policy is invariant to scaling the functional") {
  const Curriculum c(TaskKind::AppendStillEasy, 2, 8);
  RngStream buf_rng(3);
  const auto buffer = collect_exploration_buffer(c, 200, buf_rng);
  const Encoder e = train_encoder(std::span<const Observation>(buffer), 1, EncoderKind::LinearWhitened);
  TrainOptions opt;
  auto train_with = [&](double phi) {
    const AuxReward aux(e, {phi});
    RewardFn fn = [&aux](const Transition& t) { return ShapedReward{aux(observe(t.after)), 0.0, 0.0}; };
    RngStream rng(10);
    return train_q(c, fn, 4000, opt, rng);
  };
  const QFunction base = train_with(0.3);
  const QFunction doubled = train_with(0.6);
  const QFunction halved = train_with(0.15);
  RngStream probe(0);
  for (std::uint64_t ep = 0; ep < 2; ++ep) {
    EnvState s = c.initial_state(ep);
    for (int t = 0; t < 40; ++t) {
      const EncodedState k = encode_state(s, StateRepresentation::TabularKey);
      std::vector<double> q1(kNumActions), q2(kNumActions), q3(kNumActions);
      base.values(k.input(), q1);
      doubled.values(k.input(), q2);
      halved.values(k.input(), q3);
      const auto best = std::max_element(q1.begin(), q1.end()) - q1.begin();
      CHECK(std::max_element(q2.begin(), q2.end()) - q2.begin() == best);
      CHECK(std::max_element(q3.begin(), q3.end()) - q3.begin() == best);
      s = apply_action(s, action_from_index(static_cast<int>(probe.uniform_int(kNumActions)))).state;
    }
  }
}
