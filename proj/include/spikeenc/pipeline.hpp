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

// Process encoding: delayed thresholding (DT), time-shrinking multi-level
// encoding (TS-MLE) and spike-level clock skipping (SLCS).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spikeenc/codec.hpp"
#include "spikeenc/layer.hpp"

namespace spikeenc {

struct DtConfig {
  int delay = 1;
  std::int64_t theta = 1;
  std::int64_t theta_dt = 1;

  /// theta_dt defaults to delay * theta.
  static DtConfig make(int delay, std::int64_t theta, int window,
                       std::optional<std::int64_t> theta_dt = std::nullopt);

  /// Throws std::invalid_argument unless delay divides `window` and both
  /// thresholds are positive.
  void validate(int window) const;
};

struct MultiLevelTrain {
  struct Slot {
    int window = 0;  // index of the source window the slot came from
    int level = 0;   // 1 .. levels-1
    friend bool operator==(const Slot&, const Slot&) = default;
  };

  std::vector<Slot> slots;
  int levels = 4;
  int source_window = 8;

  std::int64_t total_level() const;
};

/// Splits `train` into windows of `window` steps and replaces each window's
/// c spikes with floor(c/(levels-1)) full slots plus a remainder slot.
MultiLevelTrain tsmle_compress(const SpikeTrain& train, int window, int levels);

/// Slot levels of one window: full slots first, then the remainder.
std::vector<int> tsmle_levels(int count, int levels);

/// Cycles spent on one slot-step: the largest level delivered, 0 if none.
int slcs_step_cost(std::span<const int> delivered);

struct MembraneState {
  std::int64_t v = 0;
  std::int64_t fired_total = 0;
  friend bool operator==(const MembraneState&, const MembraneState&) = default;
};

/// Adds one delay window's weighted input without thresholding.
MembraneState dt_accumulate(MembraneState state, std::int64_t contribution);

struct ThresholdResult {
  std::int64_t fires = 0;
  MembraneState state;
};

/// Fires floor(v / theta_dt) spikes at once and subtracts them from v.
ThresholdResult dt_threshold(MembraneState state, const DtConfig& cfg);

struct WeightFetches {
  std::int64_t conventional = 0;
  std::int64_t delayed = 0;
  double ratio() const {
    return delayed == 0 ? 0.0 : static_cast<double>(conventional) / static_cast<double>(delayed);
  }
};

/// Weight words read per output neuron over one time window.
WeightFetches weight_fetch_count(const LayerSpec& layer, const DtConfig& cfg, int window);

}  // namespace spikeenc
