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

#include <algorithm>
#include <stdexcept>

namespace spikeenc {

SkippingMap::SkippingMap(Shape out_shape, double threshold, std::vector<std::uint8_t> flags)
    : shape_(out_shape), threshold_(threshold), flags_(std::move(flags)) {
  if (flags_.size() != shape_.size()) {
    throw std::invalid_argument("skipping map size does not match output shape");
  }
}

bool SkippingMap::skipped(const NeuronIndex& n) const {
  const std::size_t i = (static_cast<std::size_t>(n.channel) * shape_.height + n.y) *
                            static_cast<std::size_t>(shape_.width) +
                        n.x;
  return flags_.at(i) != 0;
}

std::size_t SkippingMap::skipped_count() const {
  return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), 1));
}

SkippingMap build_skipping_map(const Tensor& prev_counts, const LayerSpec& layer, double tau) {
  if (prev_counts.shape != layer.in_shape) {
    throw std::invalid_argument("skipping-map input does not match the layer input shape");
  }
  if (!(tau >= 0.0)) throw std::invalid_argument("skipping threshold must be non-negative");

  const Shape& out = layer.out_shape;
  const double volume = static_cast<double>(layer.synapses());
  std::vector<std::uint8_t> flags(out.size(), 0);
  for (int oy = 0; oy < out.height; ++oy) {
    for (int ox = 0; ox < out.width; ++ox) {
      std::int64_t sum = 0;
      for_each_synapse(layer, oy, ox, [&](int ic, int, int, int iy, int ix, bool in_bounds) {
        if (in_bounds) sum += prev_counts.at(ic, iy, ix);
      });
      // mean < tau  <=>  sum < tau * volume
      const bool skip = static_cast<double>(sum) < tau * volume;
      // Every output channel at a position shares the receptive field.
      for (int oc = 0; oc < out.channels; ++oc) {
        flags[(static_cast<std::size_t>(oc) * out.height + oy) * out.width + ox] = skip ? 1 : 0;
      }
    }
  }
  return SkippingMap(out, tau, std::move(flags));
}

std::vector<NeuronIndex> apply_skipping(const SkippingMap& map,
                                        const std::vector<NeuronIndex>& work) {
  std::vector<NeuronIndex> kept;
  kept.reserve(work.size());
  std::copy_if(work.begin(), work.end(), std::back_inserter(kept),
               [&](const NeuronIndex& n) { return !map.skipped(n); });
  return kept;
}

std::vector<NeuronIndex> all_neurons(const LayerSpec& layer) {
  std::vector<NeuronIndex> neurons;
  neurons.reserve(layer.out_shape.size());
  for (int y = 0; y < layer.out_shape.height; ++y) {
    for (int x = 0; x < layer.out_shape.width; ++x) {
      for (int c = 0; c < layer.out_shape.channels; ++c) neurons.push_back({c, y, x});
    }
  }
  return neurons;
}

}  // namespace spikeenc
