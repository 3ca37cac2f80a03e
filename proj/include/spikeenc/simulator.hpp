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

// Counter-level model of the SNN core: input memory -> SGS -> SB ->
// superposition -> TS-MLE -> PE array -> thresholding -> output memory.
//
// PE mapping: the rows of the array hold up to `pe_rows` output channels of
// one output position and see the same broadcast input spikes; the columns
// split the synapse loop (Cin * Ky * Kx) into batches of `pe_cols`, each
// column receiving its own input train. Output positions run serially. The
// SLCS cost of a slot-step is the largest level across the columns.
//
// Time is counted in cycles, memory in words; there is no latency model.

#include <cstdint>
#include <optional>

#include "spikeenc/codec.hpp"
#include "spikeenc/layer.hpp"
#include "spikeenc/pipeline.hpp"

namespace spikeenc {

struct ArchConfig {
  int pe_rows = 8;
  int pe_cols = 1;
  int encoder_steps_per_cycle = 8;
  bool sb_enabled = false;
  bool sgs_enabled = false;
  bool tsmle_enabled = false;
  bool slcs_enabled = false;
  int tsmle_window = 8;
  int levels = 4;
  /// Override the per-layer delay / skipping threshold when set.
  std::optional<int> dt_delay;
  std::optional<double> sgs_tau;

  void validate() const;

  friend bool operator==(const ArchConfig&, const ArchConfig&) = default;
};

struct SimCounters {
  std::int64_t total_cycles = 0;
  std::int64_t encoder_cycles = 0;
  std::int64_t pe_cycles = 0;
  std::int64_t weight_fetches = 0;
  std::int64_t input_spikes = 0;
  std::int64_t output_spikes = 0;
  std::int64_t skipped_neurons = 0;
  std::int64_t accumulate_ops = 0;
  std::int64_t values_encoded = 0;
  std::int64_t threshold_ops = 0;
  std::int64_t output_writes = 0;

  SimCounters& operator+=(const SimCounters& other);
  friend bool operator==(const SimCounters&, const SimCounters&) = default;
};

struct LayerResult {
  Tensor output;
  SimCounters counters;
};

/// Delay and threshold a layer runs with under `arch`. A stored theta_dt
/// scales linearly with the delay when the delay is overridden.
DtConfig effective_dt(const LayerSpec& layer, const ArchConfig& arch, int window);

/// Threshold equivalent to thresholding once per full time window.
std::int64_t full_window_threshold(const LayerSpec& layer, int window);

/// Proposed dataflow. Output counts are clamped to [0, 2^bits - 1].
LayerResult simulate_layer(const Tensor& inputs, const LayerSpec& layer,
                           const EncodingParams& params, const ArchConfig& arch);

/// Conventional time-serial schedule on the same array: one cycle per time
/// step and synapse batch whether or not a spike arrives, weights refetched
/// and the membrane compared every step, a 1-step-per-cycle spike generator.
/// Spike results use the full-window threshold, so this differs from the
/// proposed path with every feature off and dt_delay == window only in its
/// counters.
LayerResult simulate_baseline_layer(const Tensor& inputs, const LayerSpec& layer,
                                    const EncodingParams& params, const ArchConfig& arch);

/// Generator cycles for `values` encoded trains: values * ceil(window / steps).
std::int64_t encoder_cycle_count(std::int64_t values, const EncodingParams& params,
                                 const ArchConfig& arch);

}  // namespace spikeenc
