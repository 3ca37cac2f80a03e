// Copyright 2026 The spikeenc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spikeenc/sgs.hpp"

#include <gtest/gtest.h>

#include <random>

namespace spikeenc {
namespace {

LayerSpec ones_conv(Shape in, int out_channels, int kernel, int padding) {
  return LayerSpec::conv2d(in, out_channels, kernel, 1, padding,
                           std::vector<std::int32_t>(static_cast<std::size_t>(out_channels) *
                                                         in.channels * kernel * kernel,
                                                     1));
}

TEST(SkippingMap, ZeroFieldIsSkipped) {
  const LayerSpec layer = ones_conv({1, 3, 3}, 1, 3, 0);
  const SkippingMap map = build_skipping_map(Tensor({1, 3, 3}), layer, 1.0);
  EXPECT_TRUE(map.skipped({0, 0, 0}));
  EXPECT_EQ(map.skipped_count(), 1u);
}

TEST(SkippingMap, MeanAtOrAboveThresholdIsKept) {
  // Receptive field {4, 2, 6}: mean 4 >= 3.
  const LayerSpec layer = LayerSpec::fully_connected({3, 1, 1}, 1, {1, 1, 1});
  const Tensor counts({3, 1, 1}, {4, 2, 6});
  EXPECT_FALSE(build_skipping_map(counts, layer, 3.0).skipped({0, 0, 0}));
  EXPECT_FALSE(build_skipping_map(counts, layer, 4.0).skipped({0, 0, 0}));  // strict <
  EXPECT_TRUE(build_skipping_map(counts, layer, 4.01).skipped({0, 0, 0}));
}

TEST(SkippingMap, ZeroThresholdSkipsNothing) {
  const LayerSpec layer = ones_conv({2, 4, 4}, 3, 3, 1);
  const SkippingMap map = build_skipping_map(Tensor({2, 4, 4}), layer, 0.0);
  EXPECT_EQ(map.skipped_count(), 0u);
}

TEST(SkippingMap, PaddingCountsAsZeroInTheMean) {
  // Corner output of a padded 3x3 kernel sees 4 real inputs out of 9.
  const LayerSpec layer = ones_conv({1, 2, 2}, 1, 3, 1);
  const Tensor counts({1, 2, 2}, {9, 9, 9, 9});
  // mean = 36 / 9 = 4
  EXPECT_FALSE(build_skipping_map(counts, layer, 4.0).skipped({0, 0, 0}));
  EXPECT_TRUE(build_skipping_map(counts, layer, 4.5).skipped({0, 0, 0}));
}

TEST(SkippingMap, ShapeMismatchThrows) {
  const LayerSpec layer = ones_conv({1, 3, 3}, 1, 3, 0);
  EXPECT_THROW(build_skipping_map(Tensor({2, 3, 3}), layer, 1.0), std::invalid_argument);
  EXPECT_THROW(build_skipping_map(Tensor({1, 3, 3}), layer, -1.0), std::invalid_argument);
}

TEST(ApplySkipping, FiltersFlaggedNeurons) {
  const LayerSpec layer = LayerSpec::fully_connected({1, 1, 1}, 3, {1, 1, 1});
  const std::vector<NeuronIndex> work = all_neurons(layer);

  const SkippingMap mixed({3, 1, 1}, 1.0, {1, 0, 1});
  EXPECT_EQ(apply_skipping(mixed, work), (std::vector<NeuronIndex>{{1, 0, 0}}));
  EXPECT_TRUE(apply_skipping(SkippingMap({3, 1, 1}, 1.0, {1, 1, 1}), work).empty());
  EXPECT_EQ(apply_skipping(SkippingMap({3, 1, 1}, 0.0, {0, 0, 0}), work), work);
}

TEST(SkippingMap, MonotoneInThreshold) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> value(0, 15);
  for (int trial = 0; trial < 50; ++trial) {
    const LayerSpec layer = ones_conv({2, 6, 6}, 2, 3, 1);
    Tensor counts({2, 6, 6});
    for (auto& v : counts.data) v = value(rng) < 10 ? 0 : value(rng);
    std::vector<std::uint8_t> previous(layer.out_shape.size(), 0);
    for (double tau : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 16.0}) {
      const SkippingMap map = build_skipping_map(counts, layer, tau);
      for (std::size_t i = 0; i < previous.size(); ++i) {
        ASSERT_GE(map.flags()[i], previous[i]) << "tau=" << tau;
      }
      previous = map.flags();
    }
  }
}

}  // namespace
}  // namespace spikeenc
