#pragma once

#include <cstdint>

namespace lifeaup {

/// Counter-based SplitMix64 stream.
///
/// Output i of a stream is `mix(key + i * kGolden)` where `key` is the mixed
/// seed, so a stream is fully described by (seed, counter). `derive(tag)`
/// produces an independent child stream from (seed, tag) alone; it does not
/// depend on or advance the counter, which makes derivations stateless and
/// order-independent. The generator is implemented here rather than taken
/// from <random> so that sequences are identical across standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0) : seed_(seed), key_(mix(seed)) {}

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGolden); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0, 1).
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  // Uniform integer on [0, n). n must be positive.
  std::uint64_t uniform_int(std::uint64_t n);

  bool bernoulli(double p) { return p > 0.0 && uniform() < p; }

  RngStream derive(std::uint64_t tag) const {
    return RngStream(mix(key_ ^ mix(tag + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  friend bool operator==(const RngStream& a, const RngStream& b) {
    return a.seed_ == b.seed_ && a.counter_ == b.counter_;
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Tags used to derive the standard child streams.
namespace rng_tag {
inline constexpr std::uint64_t kGeneration = 1;
inline constexpr std::uint64_t kDynamics = 2;
inline constexpr std::uint64_t kExploration = 3;
inline constexpr std::uint64_t kAuxiliary = 4;
inline constexpr std::uint64_t kPolicy = 5;
inline constexpr std::uint64_t kFunctionals = 6;
inline constexpr std::uint64_t kCounterfactual = 7;
inline constexpr std::uint64_t kEvaluation = 8;
}  // namespace rng_tag

}  // namespace lifeaup
