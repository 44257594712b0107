#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lifeaup/env.hpp"

namespace lifeaup {

using FeatureVector = std::vector<double>;

inline constexpr int kPoolSide = 5;
inline constexpr int kDownsampledDim = (kObservationSide / kPoolSide) * (kObservationSide / kPoolSide);

// Fixed per-cell intensity; distinct for every kind and Life color.
double cell_intensity(CellKind kind, CellColor color);

// 5x5 average pooling of cell intensities: 25 values in [0, 1], row-major.
FeatureVector downsample(const Observation& obs);

double dot(std::span<const double> a, std::span<const double> b);

/// Linear functional with weights drawn uniformly from (0, 1)^dim.
class RandomProjection {
 public:
  RandomProjection(int dim, std::uint64_t seed);
  explicit RandomProjection(std::vector<double> weights);

  double operator()(std::span<const double> features) const;

  const std::vector<double>& weights() const { return weights_; }
  int dim() const { return static_cast<int>(weights_.size()); }

 private:
  std::vector<double> weights_;
};

// Dot product with weights drawn from `seed`; see RandomProjection.
double random_projection_reward(std::span<const double> features, std::uint64_t seed);

}  // namespace lifeaup
