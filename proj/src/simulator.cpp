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

#include "spikeenc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "spikeenc/sgs.hpp"

namespace spikeenc {
namespace {

// Everything the datapath derives from one stored input value. Trains depend
// only on the value, so they are built once per distinct value per layer.
struct EncodedValue {
  int count = 0;
  std::vector<std::int64_t> delay_counts;     // spikes per delay window
  std::vector<std::vector<int>> slot_levels;  // TS-MLE levels per compression window
};

struct LayerPlan {
  DtConfig dt;
  int window = 0;
  int compress_window = 0;  // TS-MLE window clipped to the delay window
  std::int32_t max_count = 0;
  std::vector<EncodedValue> table;
};

enum class Schedule { kProposed, kBaseline };

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

void check_inputs(const Tensor& inputs, const LayerSpec& layer, const EncodingParams& params) {
  params.validate();
  if (!params.eigen_window()) {
    throw std::invalid_argument("simulation needs window == 2^bits");
  }
  layer.validate();
  if (inputs.shape != layer.in_shape) {
    throw std::invalid_argument("input tensor shape does not match the layer input");
  }
  for (std::int32_t v : inputs.data) {
    if (v < 0 || v > params.max_value()) {
      throw std::invalid_argument("input value " + std::to_string(v) + " outside [0, 2^" +
                                  std::to_string(params.bits) + ")");
    }
  }
}

LayerPlan make_plan(const LayerSpec& layer, const EncodingParams& params, const ArchConfig& arch,
                    Schedule schedule) {
  LayerPlan plan;
  plan.window = params.window;
  plan.max_count = params.max_value();
  if (schedule == Schedule::kBaseline) {
    plan.dt = DtConfig{params.window, layer.theta, full_window_threshold(layer, params.window)};
  } else {
    plan.dt = effective_dt(layer, arch, params.window);
  }
  const bool tsmle = schedule == Schedule::kProposed && arch.tsmle_enabled;
  const bool sb = schedule == Schedule::kProposed && arch.sb_enabled;
  plan.compress_window = tsmle ? std::gcd(arch.tsmle_window, plan.dt.delay) : 1;

  const int delay_windows = params.window / plan.dt.delay;
  plan.table.resize(static_cast<std::size_t>(params.max_value()) + 1);
  for (std::int32_t v = 0; v <= params.max_value(); ++v) {
    const std::int32_t stored = sb ? sparsity_boost(v, params) : v;
    const SpikeTrain train = superpose(stored, params);
    EncodedValue& enc = plan.table[static_cast<std::size_t>(v)];
    enc.count = spike_count(train);
    enc.delay_counts.assign(static_cast<std::size_t>(delay_windows), 0);
    if (tsmle) {
      const MultiLevelTrain compressed = tsmle_compress(train, plan.compress_window, arch.levels);
      enc.slot_levels.resize(static_cast<std::size_t>(params.window / plan.compress_window));
      for (const auto& slot : compressed.slots) {
        enc.slot_levels[static_cast<std::size_t>(slot.window)].push_back(slot.level);
        const int q = slot.window * plan.compress_window / plan.dt.delay;
        enc.delay_counts[static_cast<std::size_t>(q)] += slot.level;
      }
    } else {
      for (int q = 0; q < delay_windows; ++q) {
        enc.delay_counts[static_cast<std::size_t>(q)] =
            train.count_in(q * plan.dt.delay, (q + 1) * plan.dt.delay);
      }
    }
  }
  return plan;
}

// PE-array cycles for one batch of synapses (one entry per column, nullptr
// for zero padding).
std::int64_t batch_pe_cycles(const std::vector<const EncodedValue*>& columns,
                             const LayerPlan& plan, const ArchConfig& arch, Schedule schedule) {
  if (schedule == Schedule::kBaseline || !arch.tsmle_enabled) return plan.window;
  std::int64_t cycles = 0;
  const int windows = plan.window / plan.compress_window;
  std::vector<int> delivered;
  for (int k = 0; k < windows; ++k) {
    std::size_t steps = 0;
    for (const EncodedValue* col : columns) {
      if (col != nullptr) steps = std::max(steps, col->slot_levels[static_cast<std::size_t>(k)].size());
    }
    for (std::size_t j = 0; j < steps; ++j) {
      if (!arch.slcs_enabled) {
        cycles += arch.levels - 1;
        continue;
      }
      delivered.clear();
      for (const EncodedValue* col : columns) {
        if (col == nullptr) continue;
        const auto& levels = col->slot_levels[static_cast<std::size_t>(k)];
        delivered.push_back(j < levels.size() ? levels[j] : 0);
      }
      cycles += slcs_step_cost(delivered);
    }
  }
  return cycles;
}

LayerResult run_layer(const Tensor& inputs, const LayerSpec& layer, const EncodingParams& params,
                      const ArchConfig& arch, Schedule schedule) {
  arch.validate();
  check_inputs(inputs, layer, params);
  const LayerPlan plan = make_plan(layer, params, arch, schedule);

  std::optional<SkippingMap> skip_map;
  if (schedule == Schedule::kProposed && arch.sgs_enabled) {
    skip_map = build_skipping_map(inputs, layer, arch.sgs_tau.value_or(layer.sgs_tau));
  }

  const int steps_per_cycle = schedule == Schedule::kBaseline ? 1 : arch.encoder_steps_per_cycle;
  const std::int64_t train_cycles = ceil_div(plan.window, steps_per_cycle);
  const std::int64_t delay_windows = plan.window / plan.dt.delay;
  const std::int64_t fetch_steps = schedule == Schedule::kBaseline ? plan.window : delay_windows;
  const int synapses = layer.synapses();
  const Shape& out = layer.out_shape;

  LayerResult result{Tensor(out), {}};
  SimCounters& c = result.counters;

  std::vector<const EncodedValue*> sources(static_cast<std::size_t>(synapses));
  std::vector<const EncodedValue*> columns;
  std::vector<std::int64_t> contribution(static_cast<std::size_t>(delay_windows));

  for (int oy = 0; oy < out.height; ++oy) {
    for (int ox = 0; ox < out.width; ++ox) {
      c.output_writes += out.channels;
      if (skip_map && skip_map->skipped({0, oy, ox})) {
        c.skipped_neurons += out.channels;
        continue;
      }

      std::int64_t reads = 0;
      std::int64_t spikes = 0;
      int s = 0;
      for_each_synapse(layer, oy, ox, [&](int ic, int, int, int iy, int ix, bool in_bounds) {
        const EncodedValue* src = nullptr;
        if (in_bounds) {
          src = &plan.table[static_cast<std::size_t>(inputs.at(ic, iy, ix))];
          ++reads;
          spikes += src->count;
        }
        sources[static_cast<std::size_t>(s++)] = src;
      });

      // Cost of one pass over the synapse loop; every chunk of output
      // channels repeats it.
      std::int64_t pass_pe = 0;
      std::int64_t pass_total = 0;
      for (int first = 0; first < synapses; first += arch.pe_cols) {
        const int last = std::min(synapses, first + arch.pe_cols);
        columns.assign(sources.begin() + first, sources.begin() + last);
        const bool any_read =
            std::any_of(columns.begin(), columns.end(), [](auto* p) { return p != nullptr; });
        const std::int64_t pe = batch_pe_cycles(columns, plan, arch, schedule);
        // One generator per column, running ahead of the array.
        const std::int64_t gen = any_read ? train_cycles : 0;
        pass_pe += pe;
        pass_total += std::max(pe, gen);
      }

      const std::int64_t chunks = ceil_div(out.channels, arch.pe_rows);
      c.pe_cycles += chunks * pass_pe;
      c.total_cycles += chunks * pass_total;
      c.values_encoded += chunks * reads;
      c.encoder_cycles += chunks * reads * train_cycles;
      c.input_spikes += chunks * spikes;

      for (int oc = 0; oc < out.channels; ++oc) {
        std::fill(contribution.begin(), contribution.end(), 0);
        s = 0;
        for_each_synapse(layer, oy, ox, [&](int ic, int ky, int kx, int, int, bool) {
          const EncodedValue* src = sources[static_cast<std::size_t>(s++)];
          if (src == nullptr || src->count == 0) return;
          const std::int64_t w = layer.weight(oc, ic, ky, kx);
          for (std::size_t q = 0; q < contribution.size(); ++q) {
            contribution[q] += w * src->delay_counts[q];
          }
        });

        MembraneState membrane;
        for (std::int64_t part : contribution) {
          membrane = dt_accumulate(membrane, part);
          membrane = dt_threshold(membrane, plan.dt).state;
        }
        const std::int64_t fired =
            std::clamp<std::int64_t>(membrane.fired_total, 0, plan.max_count);
        result.output.at(oc, oy, ox) = static_cast<std::int32_t>(fired);

        c.output_spikes += fired;
        c.accumulate_ops += spikes;
        c.weight_fetches += fetch_steps * synapses;
        c.threshold_ops += fetch_steps;
      }
    }
  }
  return result;
}

}  // namespace

void ArchConfig::validate() const {
  if (pe_rows < 1 || pe_cols < 1) throw std::invalid_argument("PE array must be at least 1x1");
  if (encoder_steps_per_cycle < 1) {
    throw std::invalid_argument("encoder_steps_per_cycle must be >= 1");
  }
  if (tsmle_window < 1) throw std::invalid_argument("TS-MLE window must be >= 1");
  if (levels < 2) throw std::invalid_argument("TS-MLE needs at least 2 levels");
  if (dt_delay && *dt_delay < 1) throw std::invalid_argument("dt_delay must be >= 1");
  if (sgs_tau && !(*sgs_tau >= 0.0)) throw std::invalid_argument("sgs_tau must be >= 0");
}

SimCounters& SimCounters::operator+=(const SimCounters& o) {
  total_cycles += o.total_cycles;
  encoder_cycles += o.encoder_cycles;
  pe_cycles += o.pe_cycles;
  weight_fetches += o.weight_fetches;
  input_spikes += o.input_spikes;
  output_spikes += o.output_spikes;
  skipped_neurons += o.skipped_neurons;
  accumulate_ops += o.accumulate_ops;
  values_encoded += o.values_encoded;
  threshold_ops += o.threshold_ops;
  output_writes += o.output_writes;
  return *this;
}

namespace {

std::int64_t scaled_threshold(const LayerSpec& layer, int delay) {
  if (delay == layer.dt_delay) return layer.theta_dt;
  const double scaled = static_cast<double>(layer.theta_dt) * delay / layer.dt_delay;
  return std::max<std::int64_t>(1, std::llround(scaled));
}

}  // namespace

DtConfig effective_dt(const LayerSpec& layer, const ArchConfig& arch, int window) {
  const int delay = arch.dt_delay.value_or(layer.dt_delay);
  DtConfig cfg{delay, layer.theta, scaled_threshold(layer, delay)};
  cfg.validate(window);
  return cfg;
}

std::int64_t full_window_threshold(const LayerSpec& layer, int window) {
  return scaled_threshold(layer, window);
}

LayerResult simulate_layer(const Tensor& inputs, const LayerSpec& layer,
                           const EncodingParams& params, const ArchConfig& arch) {
  return run_layer(inputs, layer, params, arch, Schedule::kProposed);
}

LayerResult simulate_baseline_layer(const Tensor& inputs, const LayerSpec& layer,
                                    const EncodingParams& params, const ArchConfig& arch) {
  return run_layer(inputs, layer, params, arch, Schedule::kBaseline);
}

std::int64_t encoder_cycle_count(std::int64_t values, const EncodingParams& params,
                                 const ArchConfig& arch) {
  if (arch.encoder_steps_per_cycle < 1) {
    throw std::invalid_argument("encoder_steps_per_cycle must be >= 1");
  }
  if (values < 0) throw std::invalid_argument("negative value count");
  return values * ceil_div(params.window, arch.encoder_steps_per_cycle);
}

}  // namespace spikeenc
