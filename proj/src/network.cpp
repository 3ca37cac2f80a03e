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

#include "spikeenc/network.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

namespace spikeenc {

void NetworkSpec::validate() const {
  encoding.validate();
  if (!encoding.eigen_window()) throw std::invalid_argument("network window must be 2^bits");
  arch.validate();
  if (layers.empty()) throw std::invalid_argument("network has no layers");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    layers[i].validate();
    if (i > 0 && layers[i].in_shape != layers[i - 1].out_shape) {
      throw std::invalid_argument("layer " + std::to_string(i) +
                                  " input shape does not match the previous output");
    }
    effective_dt(layers[i], arch, encoding.window);
  }
}

namespace {

using LayerRunner = LayerResult (*)(const Tensor&, const LayerSpec&, const EncodingParams&,
                                    const ArchConfig&);

NetworkResult run_layers(const Tensor& input, const NetworkSpec& net, LayerRunner runner) {
  net.validate();
  NetworkResult result;
  Tensor current = input;
  for (const LayerSpec& layer : net.layers) {
    LayerResult step = runner(current, layer, net.encoding, net.arch);
    result.counters += step.counters;
    result.per_layer.push_back(step.counters);
    current = std::move(step.output);
  }
  result.output = std::move(current);
  return result;
}

}  // namespace

NetworkResult run_network(const Tensor& input, const NetworkSpec& net) {
  return run_layers(input, net, &simulate_layer);
}

NetworkResult run_baseline_network(const Tensor& input, const NetworkSpec& net) {
  return run_layers(input, net, &simulate_baseline_layer);
}

std::vector<std::int64_t> oracle_accumulate(const Tensor& input, const LayerSpec& layer) {
  if (input.shape != layer.in_shape) {
    throw std::invalid_argument("oracle input shape does not match the layer");
  }
  const Shape& out = layer.out_shape;
  std::vector<std::int64_t> acc(out.size(), 0);
  for (int oc = 0; oc < out.channels; ++oc) {
    for (int oy = 0; oy < out.height; ++oy) {
      for (int ox = 0; ox < out.width; ++ox) {
        std::int64_t sum = 0;
        for (int ic = 0; ic < layer.in_shape.channels; ++ic) {
          for (int ky = 0; ky < layer.kernel_h; ++ky) {
            for (int kx = 0; kx < layer.kernel_w; ++kx) {
              const int iy = oy * layer.stride - layer.padding + ky;
              const int ix = ox * layer.stride - layer.padding + kx;
              if (iy < 0 || ix < 0 || iy >= input.shape.height || ix >= input.shape.width) continue;
              sum += static_cast<std::int64_t>(layer.weight(oc, ic, ky, kx)) * input.at(ic, iy, ix);
            }
          }
        }
        acc[(static_cast<std::size_t>(oc) * out.height + oy) * out.width + ox] = sum;
      }
    }
  }
  return acc;
}

Tensor oracle_forward(const Tensor& input, const NetworkSpec& net) {
  net.validate();
  for (std::int32_t v : input.data) {
    if (v < 0 || v > net.encoding.max_value()) {
      throw std::invalid_argument("input value outside [0, 2^bits)");
    }
  }
  Tensor current = input;
  for (const LayerSpec& layer : net.layers) {
    const std::int64_t threshold = full_window_threshold(layer, net.encoding.window);
    const std::vector<std::int64_t> acc = oracle_accumulate(current, layer);
    Tensor next(layer.out_shape);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      const std::int64_t count = std::max<std::int64_t>(acc[i], 0) / threshold;
      next.data[i] = static_cast<std::int32_t>(
          std::min<std::int64_t>(count, net.encoding.max_value()));
    }
    current = std::move(next);
  }
  return current;
}

Tensor calibrate_threshold(LayerSpec& layer, const Tensor& probe, const EncodingParams& params) {
  const std::vector<std::int64_t> acc = oracle_accumulate(probe, layer);
  std::vector<std::int64_t> sorted = acc;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::int64_t theta_dt = std::max<std::int64_t>(1, sorted[sorted.size() / 2]);
  layer.dt_delay = params.window;
  layer.theta_dt = theta_dt;
  layer.theta = std::max<std::int64_t>(1, theta_dt / params.window);
  layer.validate();

  Tensor counts(layer.out_shape);
  for (std::size_t j = 0; j < acc.size(); ++j) {
    counts.data[j] = static_cast<std::int32_t>(std::min<std::int64_t>(
        std::max<std::int64_t>(acc[j], 0) / theta_dt, params.max_value()));
  }
  return counts;
}

LayerSpec random_conv_layer(Shape in, int out_channels, int kernel, int padding, int range,
                            const Tensor& probe, const EncodingParams& params,
                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int32_t> dist(-range, range);
  std::vector<std::int32_t> weights(static_cast<std::size_t>(out_channels) * in.channels *
                                    kernel * kernel);
  for (auto& w : weights) w = dist(rng);
  LayerSpec layer = LayerSpec::conv2d(in, out_channels, kernel, 1, padding, std::move(weights));
  calibrate_threshold(layer, probe, params);
  return layer;
}

Tensor random_input(Shape shape, int bits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int32_t> dist(0, (1 << bits) - 1);
  Tensor t(shape);
  for (auto& v : t.data) v = dist(rng);
  return t;
}

NetworkSpec random_network(const RandomNetworkOptions& options, std::uint64_t seed) {
  if (options.layers < 1) throw std::invalid_argument("random network needs >= 1 layer");
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  NetworkSpec net;
  net.encoding = EncodingParams::for_bits(options.bits);
  net.arch = ArchConfig{};
  net.generator_seed = seed;

  const int side = uniform(2, options.max_spatial);
  Shape shape{uniform(1, options.max_channels), side, side};
  Tensor probe = random_input(shape, options.bits, rng());

  for (int i = 0; i < options.layers; ++i) {
    const bool fc = options.final_fully_connected && i == options.layers - 1;
    const int outputs = uniform(1, options.max_channels);
    LayerSpec layer;
    layer.kind = fc ? LayerKind::kFullyConnected : LayerKind::kConv2d;
    layer.in_shape = shape;
    if (fc) {
      layer.kernel_h = shape.height;
      layer.kernel_w = shape.width;
      layer.out_shape = {outputs, 1, 1};
    } else {
      const int kernel = std::min(shape.height, shape.width) >= 3 && uniform(0, 1) ? 3 : 1;
      layer.kernel_h = layer.kernel_w = kernel;
      layer.padding = kernel == 3 ? uniform(0, 1) : 0;
      layer.stride = uniform(1, 2);
      layer.out_shape = {outputs, (shape.height + 2 * layer.padding - kernel) / layer.stride + 1,
                         (shape.width + 2 * layer.padding - kernel) / layer.stride + 1};
    }
    layer.weights.resize(layer.weight_count());
    for (auto& w : layer.weights) w = uniform(-options.weight_range, options.weight_range);

    probe = calibrate_threshold(layer, probe, net.encoding);
    shape = layer.out_shape;
    net.layers.push_back(std::move(layer));
  }
  net.validate();
  return net;
}

}  // namespace spikeenc
