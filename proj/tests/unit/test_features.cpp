#include <set>

#include "doctest.h"
#include "lifeaup/errors.hpp"
#include "lifeaup/features.hpp"
#include "lifeaup/format.hpp"

using namespace lifeaup;

namespace {

Observation filled(ObservedCell cell) {
  Observation obs;
  obs.cells.fill(cell);
  return obs;
}

}  // namespace

TEST_CASE("intensity table is injective") {
  std::set<double> seen;
  int n = 0;
  for (CellKind k : {CellKind::Empty, CellKind::Wall, CellKind::Crate, CellKind::Tree, CellKind::Spawner,
                     CellKind::Goal}) {
    seen.insert(cell_intensity(k, CellColor::None));
    ++n;
  }
  for (CellColor c : {CellColor::Gray, CellColor::Green, CellColor::Red, CellColor::Yellow}) {
    seen.insert(cell_intensity(CellKind::Life, c));
    ++n;
  }
  CHECK(seen.size() == static_cast<std::size_t>(n));
  CHECK(*seen.begin() == 0.0);
  CHECK(*seen.rbegin() <= 1.0);
}

TEST_CASE("average pooling") {
  const FeatureVector zeros = downsample(Observation{});
  REQUIRE(zeros.size() == static_cast<std::size_t>(kDownsampledDim));
  for (double v : zeros) CHECK(v == 0.0);

  const FeatureVector gray = downsample(filled({CellKind::Life, CellColor::Gray, false}));
  for (double v : gray) CHECK(v == doctest::Approx(0.8).epsilon(1e-15));

  Observation one;
  one.cells[7 * kObservationSide + 13] = {CellKind::Life, CellColor::Gray, false};
  const FeatureVector f = downsample(one);
  for (int i = 0; i < kDownsampledDim; ++i) {
    CHECK(f[i] == doctest::Approx(i == 1 * 5 + 2 ? 0.8 / 25.0 : 0.0).epsilon(1e-15));
  }
}

TEST_CASE("random projection") {
  const RandomProjection p(kDownsampledDim, 42);
  for (double w : p.weights()) {
    CHECK(w > 0.0);
    CHECK(w < 1.0);
  }
  const FeatureVector zeros(kDownsampledDim, 0.0);
  CHECK(p(zeros) == 0.0);
  const FeatureVector ones(kDownsampledDim, 1.0);
  double sum = 0.0;
  for (double w : p.weights()) sum += w;
  CHECK(p(ones) == doctest::Approx(sum).epsilon(1e-15));
  CHECK(RandomProjection(kDownsampledDim, 42).weights() == p.weights());
  CHECK(RandomProjection(kDownsampledDim, 43).weights() != p.weights());
  CHECK_THROWS_AS(p(FeatureVector(3, 1.0)), ContractError);

  FeatureVector ramp(kDownsampledDim);
  for (int i = 0; i < kDownsampledDim; ++i) ramp[i] = i / 25.0;
  CHECK(format_real(random_projection_reward(ramp, 42)) == "6.790929161653164");
}
