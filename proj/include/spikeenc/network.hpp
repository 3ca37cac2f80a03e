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
#include <optional>
#include <vector>

#include "spikeenc/codec.hpp"
#include "spikeenc/layer.hpp"
#include "spikeenc/simulator.hpp"

namespace spikeenc {

struct NetworkSpec {
  std::vector<LayerSpec> layers;
  EncodingParams encoding = EncodingParams::for_bits(4);
  ArchConfig arch;
  /// Seed of the random generator that produced this network, if any.
  std::optional<std::uint64_t> generator_seed;

  /// Throws std::invalid_argument on an empty layer list, a shape that does
  /// not chain, or a per-layer delay that does not divide the window.
  void validate() const;

  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

struct NetworkResult {
  Tensor output;
  SimCounters counters;
  std::vector<SimCounters> per_layer;
};

/// Runs every layer through the proposed dataflow; each layer re-encodes the
/// counts the previous one stored.
NetworkResult run_network(const Tensor& input, const NetworkSpec& net);

/// Same network on the conventional schedule.
NetworkResult run_baseline_network(const Tensor& input, const NetworkSpec& net);

/// Integer reference: per layer, A = conv(input, weights), output =
/// clamp(floor(max(A, 0) / full-window threshold), 0, 2^bits - 1).
Tensor oracle_forward(const Tensor& input, const NetworkSpec& net);

/// Exact integer pre-activation of one layer.
std::vector<std::int64_t> oracle_accumulate(const Tensor& input, const LayerSpec& layer);

struct RandomNetworkOptions {
  int layers = 3;
  int max_channels = 8;
  int max_spatial = 8;
  int bits = 4;
  int weight_range = 8;
  bool final_fully_connected = true;
};

/// Random conv/fc stack with weights uniform in [-range, range] and
/// full-window thresholds picked so that roughly half the neurons fire on a
/// uniform random probe. Every layer uses dt_delay == window.
NetworkSpec random_network(const RandomNetworkOptions& options, std::uint64_t seed);

/// Sets the layer to threshold once per window with theta_dt at the median
/// accumulation of `probe` (at least 1), so about half the neurons fire.
/// Returns the oracle counts of `probe` under the new threshold.
Tensor calibrate_threshold(LayerSpec& layer, const Tensor& probe, const EncodingParams& params);

/// Conv layer with weights uniform in [-range, range], calibrated on `probe`.
LayerSpec random_conv_layer(Shape in, int out_channels, int kernel, int padding, int range,
                            const Tensor& probe, const EncodingParams& params,
                            std::uint64_t seed);

/// Uniform values in [0, 2^bits).
Tensor random_input(Shape shape, int bits, std::uint64_t seed);

}  // namespace spikeenc
