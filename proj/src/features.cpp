#include "lifeaup/features.hpp"

#include "lifeaup/errors.hpp"

namespace lifeaup {

double cell_intensity(CellKind kind, CellColor color) {
  switch (kind) {
    case CellKind::Empty: return 0.0;
    case CellKind::Wall: return 0.25;
    case CellKind::Crate: return 0.3;
    case CellKind::Tree: return 0.5;
    case CellKind::Spawner: return 0.6;
    case CellKind::Goal: return 0.7;
    case CellKind::Life:
      switch (color) {
        case CellColor::Green: return 0.85;
        case CellColor::Red: return 0.9;
        case CellColor::Yellow: return 0.95;
        default: return 0.8;
      }
  }
  return 0.0;
}

FeatureVector downsample(const Observation& obs) {
  constexpr int blocks = kObservationSide / kPoolSide;
  FeatureVector out(kDownsampledDim, 0.0);
  for (int r = 0; r < kObservationSide; ++r) {
    for (int c = 0; c < kObservationSide; ++c) {
      const ObservedCell& cell = obs.at(r, c);
      out[(r / kPoolSide) * blocks + c / kPoolSide] += cell_intensity(cell.kind, cell.color);
    }
  }
  for (double& v : out) v /= kPoolSide * kPoolSide;
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ContractError("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RandomProjection::RandomProjection(int dim, std::uint64_t seed) {
  if (dim < 1) throw ContractError("projection dimension must be positive");
  RngStream rng = RngStream(seed).derive(rng_tag::kFunctionals);
  weights_.resize(static_cast<std::size_t>(dim));
  for (double& w : weights_) w = rng.uniform_open();
}

RandomProjection::RandomProjection(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw ContractError("projection needs weights");
}

double RandomProjection::operator()(std::span<const double> features) const {
  if (features.size() != weights_.size()) throw ContractError("projection: dimension mismatch");
  return dot(weights_, features);
}

double random_projection_reward(std::span<const double> features, std::uint64_t seed) {
  return RandomProjection(static_cast<int>(features.size()), seed)(features);
}

}  // namespace lifeaup
