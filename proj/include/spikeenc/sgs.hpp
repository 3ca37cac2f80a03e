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

#pragma once

// Spike-generation skipping: predict zero-output neurons from the counts the
// previous layer committed to memory.

#include <cstdint>
#include <vector>

#include "spikeenc/layer.hpp"

namespace spikeenc {

/// Output neuron address in (channel, y, x) of a layer's output tensor.
struct NeuronIndex {
  int channel = 0;
  int y = 0;
  int x = 0;
  friend bool operator==(const NeuronIndex&, const NeuronIndex&) = default;
};

/// One zero-flag per output neuron, laid out like the layer's output tensor.
class SkippingMap {
 public:
  SkippingMap(Shape out_shape, double threshold, std::vector<std::uint8_t> flags);

  const Shape& shape() const { return shape_; }
  double threshold() const { return threshold_; }
  bool skipped(const NeuronIndex& n) const;
  std::size_t skipped_count() const;
  const std::vector<std::uint8_t>& flags() const { return flags_; }

 private:
  Shape shape_;
  double threshold_;
  std::vector<std::uint8_t> flags_;
};

/// Flags a neuron when the mean of `prev_counts` over its receptive field,
/// padding included as zeros, is strictly below `tau`.
SkippingMap build_skipping_map(const Tensor& prev_counts, const LayerSpec& layer, double tau);

/// Neurons of `work` whose flag is clear, order preserved.
std::vector<NeuronIndex> apply_skipping(const SkippingMap& map,
                                        const std::vector<NeuronIndex>& work);

/// Every output neuron of the layer in (y, x, channel) order.
std::vector<NeuronIndex> all_neurons(const LayerSpec& layer);

}  // namespace spikeenc
