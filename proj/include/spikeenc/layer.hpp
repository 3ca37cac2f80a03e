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

#include <cstdint>
#include <string_view>
#include <vector>

namespace spikeenc {

struct Shape {
  int channels = 0;
  int height = 0;
  int width = 0;

  std::size_t size() const {
    return static_cast<std::size_t>(channels) * static_cast<std::size_t>(height) *
           static_cast<std::size_t>(width);
  }
  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Dense CHW tensor of integer counts (or pixels for the first layer).
struct Tensor {
  Shape shape;
  std::vector<std::int32_t> data;

  Tensor() = default;
  explicit Tensor(Shape s) : shape(s), data(s.size(), 0) {}
  Tensor(Shape s, std::vector<std::int32_t> values);

  std::size_t index(int c, int y, int x) const {
    return (static_cast<std::size_t>(c) * static_cast<std::size_t>(shape.height) +
            static_cast<std::size_t>(y)) *
               static_cast<std::size_t>(shape.width) +
           static_cast<std::size_t>(x);
  }
  std::int32_t at(int c, int y, int x) const { return data[index(c, y, x)]; }
  std::int32_t& at(int c, int y, int x) { return data[index(c, y, x)]; }

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

enum class LayerKind { kConv2d, kFullyConnected };

std::string_view to_string(LayerKind kind);
LayerKind parse_layer_kind(std::string_view name);

/// One integer-weight layer. Fully-connected layers are stored with a kernel
/// covering the whole input plane, stride 1 and no padding, so both kinds
/// share the convolution geometry below.
///
/// Weights are row-major (out-channel, in-channel, ky, kx).
struct LayerSpec {
  LayerKind kind = LayerKind::kConv2d;
  Shape in_shape;
  Shape out_shape;
  int kernel_h = 1;
  int kernel_w = 1;
  int stride = 1;
  int padding = 0;
  std::vector<std::int32_t> weights;
  std::int64_t theta = 1;
  std::int64_t theta_dt = 1;
  int dt_delay = 1;
  double sgs_tau = 0.0;

  static LayerSpec conv2d(Shape in, int out_channels, int kernel, int stride, int padding,
                          std::vector<std::int32_t> weights);
  static LayerSpec fully_connected(Shape in, int outputs, std::vector<std::int32_t> weights);

  /// Cin * Ky * Kx.
  int synapses() const { return in_shape.channels * kernel_h * kernel_w; }
  std::size_t weight_count() const {
    return static_cast<std::size_t>(out_shape.channels) * static_cast<std::size_t>(synapses());
  }
  std::int32_t weight(int oc, int ic, int ky, int kx) const {
    return weights[((static_cast<std::size_t>(oc) * in_shape.channels + ic) * kernel_h + ky) *
                       kernel_w +
                   kx];
  }

  /// Throws std::invalid_argument when shapes, weights or thresholds are
  /// inconsistent.
  void validate() const;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

/// Calls fn(ic, ky, kx, iy, ix, in_bounds) for every synapse of the output
/// position (oy, ox), in (ic, ky, kx) order. Out-of-bounds positions are
/// zero padding.
template <typename Fn>
void for_each_synapse(const LayerSpec& layer, int oy, int ox, Fn&& fn) {
  for (int ic = 0; ic < layer.in_shape.channels; ++ic) {
    for (int ky = 0; ky < layer.kernel_h; ++ky) {
      const int iy = oy * layer.stride - layer.padding + ky;
      for (int kx = 0; kx < layer.kernel_w; ++kx) {
        const int ix = ox * layer.stride - layer.padding + kx;
        const bool in_bounds =
            iy >= 0 && iy < layer.in_shape.height && ix >= 0 && ix < layer.in_shape.width;
        fn(ic, ky, kx, iy, ix, in_bounds);
      }
    }
  }
}

}  // namespace spikeenc
