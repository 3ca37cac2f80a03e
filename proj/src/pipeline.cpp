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

#include "spikeenc/pipeline.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace spikeenc {

DtConfig DtConfig::make(int delay, std::int64_t theta, int window,
                        std::optional<std::int64_t> theta_dt) {
  DtConfig cfg{delay, theta, theta_dt.value_or(static_cast<std::int64_t>(delay) * theta)};
  cfg.validate(window);
  return cfg;
}

void DtConfig::validate(int window) const {
  if (delay < 1 || delay > window || window % delay != 0) {
    throw std::invalid_argument("delay " + std::to_string(delay) +
                                " must divide the time window " + std::to_string(window));
  }
  if (theta < 1) throw std::invalid_argument("theta must be positive");
  if (theta_dt < 1) throw std::invalid_argument("theta_dt must be positive");
}

std::int64_t MultiLevelTrain::total_level() const {
  return std::accumulate(slots.begin(), slots.end(), std::int64_t{0},
                         [](std::int64_t acc, const Slot& s) { return acc + s.level; });
}

std::vector<int> tsmle_levels(int count, int levels) {
  if (levels < 2) throw std::invalid_argument("TS-MLE needs at least 2 levels");
  if (count < 0) throw std::invalid_argument("negative spike count");
  const int top = levels - 1;
  std::vector<int> out(static_cast<std::size_t>(count / top), top);
  if (count % top != 0) out.push_back(count % top);
  return out;
}

MultiLevelTrain tsmle_compress(const SpikeTrain& train, int window, int levels) {
  if (window < 1) throw std::invalid_argument("TS-MLE window must be positive");
  if (levels < 2) throw std::invalid_argument("TS-MLE needs at least 2 levels");
  if (train.window() % window != 0) {
    throw std::invalid_argument("train length " + std::to_string(train.window()) +
                                " is not a multiple of the TS-MLE window " +
                                std::to_string(window));
  }
  MultiLevelTrain out;
  out.levels = levels;
  out.source_window = window;
  for (int k = 0; k * window < train.window(); ++k) {
    const int count = train.count_in(k * window, (k + 1) * window);
    for (int level : tsmle_levels(count, levels)) out.slots.push_back({k, level});
  }
  return out;
}

int slcs_step_cost(std::span<const int> delivered) {
  if (delivered.empty()) return 0;
  return std::max(0, *std::max_element(delivered.begin(), delivered.end()));
}

MembraneState dt_accumulate(MembraneState state, std::int64_t contribution) {
  state.v += contribution;
  return state;
}

ThresholdResult dt_threshold(MembraneState state, const DtConfig& cfg) {
  if (cfg.theta_dt <= 0) throw std::invalid_argument("theta_dt must be positive");
  ThresholdResult result;
  if (state.v >= cfg.theta_dt) result.fires = state.v / cfg.theta_dt;
  state.v -= result.fires * cfg.theta_dt;
  state.fired_total += result.fires;
  result.state = state;
  return result;
}

WeightFetches weight_fetch_count(const LayerSpec& layer, const DtConfig& cfg, int window) {
  cfg.validate(window);
  const std::int64_t synapses = layer.synapses();
  return {window * synapses, (window / cfg.delay) * synapses};
}

}  // namespace spikeenc
