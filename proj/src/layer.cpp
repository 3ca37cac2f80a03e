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

#include "spikeenc/layer.hpp"

#include <stdexcept>
#include <string>

namespace spikeenc {

Tensor::Tensor(Shape s, std::vector<std::int32_t> values) : shape(s), data(std::move(values)) {
  if (data.size() != shape.size()) {
    throw std::invalid_argument("tensor data size " + std::to_string(data.size()) +
                                " does not match shape size " + std::to_string(shape.size()));
  }
}

std::string_view to_string(LayerKind kind) {
  return kind == LayerKind::kConv2d ? "conv2d" : "fc";
}

LayerKind parse_layer_kind(std::string_view name) {
  if (name == "conv2d") return LayerKind::kConv2d;
  if (name == "fc") return LayerKind::kFullyConnected;
  throw std::invalid_argument("unknown layer kind '" + std::string(name) + "'");
}

LayerSpec LayerSpec::conv2d(Shape in, int out_channels, int kernel, int stride, int padding,
                            std::vector<std::int32_t> weights) {
  LayerSpec layer;
  layer.kind = LayerKind::kConv2d;
  layer.in_shape = in;
  layer.kernel_h = kernel;
  layer.kernel_w = kernel;
  layer.stride = stride;
  layer.padding = padding;
  if (stride < 1) throw std::invalid_argument("stride must be positive");
  layer.out_shape = Shape{out_channels, (in.height + 2 * padding - kernel) / stride + 1,
                          (in.width + 2 * padding - kernel) / stride + 1};
  layer.weights = std::move(weights);
  layer.validate();
  return layer;
}

LayerSpec LayerSpec::fully_connected(Shape in, int outputs, std::vector<std::int32_t> weights) {
  LayerSpec layer;
  layer.kind = LayerKind::kFullyConnected;
  layer.in_shape = in;
  layer.out_shape = Shape{outputs, 1, 1};
  layer.kernel_h = in.height;
  layer.kernel_w = in.width;
  layer.weights = std::move(weights);
  layer.validate();
  return layer;
}

void LayerSpec::validate() const {
  auto positive = [](const Shape& s) { return s.channels > 0 && s.height > 0 && s.width > 0; };
  if (!positive(in_shape) || !positive(out_shape)) {
    throw std::invalid_argument("layer shapes must be positive");
  }
  if (kernel_h < 1 || kernel_w < 1 || stride < 1 || padding < 0) {
    throw std::invalid_argument("bad kernel/stride/padding");
  }
  const int expect_h = (in_shape.height + 2 * padding - kernel_h) / stride + 1;
  const int expect_w = (in_shape.width + 2 * padding - kernel_w) / stride + 1;
  if (in_shape.height + 2 * padding < kernel_h || in_shape.width + 2 * padding < kernel_w ||
      expect_h != out_shape.height || expect_w != out_shape.width) {
    throw std::invalid_argument("output shape does not follow from input, kernel and stride");
  }
  if (kind == LayerKind::kFullyConnected &&
      (kernel_h != in_shape.height || kernel_w != in_shape.width || stride != 1 ||
       padding != 0 || out_shape.height != 1 || out_shape.width != 1)) {
    throw std::invalid_argument("fully-connected layer must cover the whole input");
  }
  if (weights.size() != weight_count()) {
    throw std::invalid_argument("weight tensor has " + std::to_string(weights.size()) +
                                " entries, expected " + std::to_string(weight_count()));
  }
  if (theta < 1 || theta_dt < 1) throw std::invalid_argument("thresholds must be >= 1");
  if (dt_delay < 1) throw std::invalid_argument("dt_delay must be >= 1");
  if (!(sgs_tau >= 0.0)) throw std::invalid_argument("sgs_tau must be non-negative");
}

}  // namespace spikeenc
