#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fsr/weighting.hpp"
#include "test_support.hpp"

using namespace fsr;

namespace {

Grid<AreaCategory> uniform(std::size_t n, AreaCategory c) { return Grid<AreaCategory>(n, n, c); }

}  // namespace

TEST(SpatialWeights, HandEvaluatedValues) {
  // 0.7^sqrt(0.5) at (15,15) of a 32x32 area.
  constexpr double kAvailable = 0.7770836540510088;
  auto cats = uniform(32, AreaCategory::available);
  EXPECT_NEAR(spatial_weights(cats, 0.7, 0.5).weights(15, 15), kAvailable, 1e-14);
  cats(15, 15) = AreaCategory::reconstructed;
  EXPECT_NEAR(spatial_weights(cats, 0.7, 0.5).weights(15, 15), 0.5 * kAvailable, 1e-14);
  cats(15, 15) = AreaCategory::unknown;
  EXPECT_EQ(spatial_weights(cats, 0.7, 0.5).weights(15, 15), 0.0);
}

TEST(SpatialWeights, RejectsOutOfRangeParameters) {
  const auto cats = uniform(4, AreaCategory::available);
  EXPECT_THROW(spatial_weights(cats, 1.0, 0.5), ConfigError);
  EXPECT_THROW(spatial_weights(cats, 0.0, 0.5), ConfigError);
  EXPECT_THROW(spatial_weights(cats, 0.7, -0.1), ConfigError);
  EXPECT_THROW(spatial_weights(cats, 0.7, 1.5), ConfigError);
}

TEST(SpatialWeights, FullReuseMakesReconstructedEqualAvailable) {
  std::mt19937_64 rng(1);
  const auto cats = fsr::testing::random_categories(16, 16, rng);
  auto promoted = cats;
  for (auto& c : promoted) {
    if (c == AreaCategory::reconstructed) c = AreaCategory::available;
  }
  EXPECT_EQ(spatial_weights(cats, 0.7, 1.0).weights, spatial_weights(promoted, 0.7, 1.0).weights);
}

TEST(SpatialWeights, NonNegativeAndZeroOnUnknown) {
  std::mt19937_64 rng(2);
  const auto cats = fsr::testing::random_categories(20, 12, rng);
  const auto w = spatial_weights(cats, 0.6, 0.3).weights;
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_GE(w[i], 0.0);
    if (cats[i] == AreaCategory::unknown) EXPECT_EQ(w[i], 0.0);
    else EXPECT_GT(w[i], 0.0);
  }
}

TEST(FrequencyWeights, HandEvaluatedValues) {
  const auto& wf = frequency_weights(32, 32);
  EXPECT_EQ(wf(0, 0), 1.0);
  EXPECT_NEAR(wf(16, 16), 0.0, 1e-15);
  EXPECT_NEAR(wf(8, 0), 0.41789321881345254, 1e-14);
}

TEST(FrequencyWeights, RootIsLinearInRadialIndexAndBounded) {
  for (auto [M, N] : {std::pair{32u, 32u}, {7u, 10u}, {1u, 5u}}) {
    const auto& wf = frequency_weights(M, N);
    for (std::size_t k = 0; k < M; ++k)
      for (std::size_t l = 0; l < N; ++l) {
        const double w = wf(k, l);
        EXPECT_GE(w, 0.0);
        EXPECT_LE(w, 1.0);
        EXPECT_NEAR(std::sqrt(w), 1.0 - std::sqrt(2.0) * radial_index(k, l, M, N), 1e-14);
        EXPECT_EQ(w, wf((M - k) % M, (N - l) % N));
      }
  }
}

TEST(SelectionOrder, StartsAtDcAndIsSortedByRadialIndex) {
  const auto& order = selection_order(8, 6);
  ASSERT_EQ(order.size(), 48u);
  EXPECT_EQ(order.front(), 0u);
  for (std::size_t i = 1; i < order.size(); ++i) {
    const double a = radial_index(order[i - 1] / 6, order[i - 1] % 6, 8, 6);
    const double b = radial_index(order[i] / 6, order[i] % 6, 8, 6);
    EXPECT_TRUE(a < b || (a == b && order[i - 1] < order[i]));
  }
}
