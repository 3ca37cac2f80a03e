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

#include "spikeenc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

namespace spikeenc {
namespace {

double ratio_or_zero(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

}  // namespace

double spike_ratio(std::int64_t spikes, std::int64_t values, int window) {
  if (values <= 0 || window <= 0) return 0.0;
  return static_cast<double>(spikes) / (static_cast<double>(values) * window);
}

double figure_of_merit(double accuracy_percent, double ratio) {
  if (ratio <= 0.0) throw std::invalid_argument("FOM needs a positive spike ratio");
  return accuracy_percent / (ratio * 100.0);
}

std::string format_fixed(double value, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << value;
  return os.str();
}

Tensor gen_synthetic(Shape shape, int bits, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be non-negative");
  const std::int32_t top = (std::int32_t{1} << bits) - 1;
  Tensor t(shape);
  if (sigma == 0.0) return t;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  for (auto& v : t.data) {
    const double x = std::abs(normal(rng)) * top;
    v = static_cast<std::int32_t>(std::min<double>(std::round(x), top));
  }
  return t;
}

Agreement compare_outputs(const Tensor& got, const Tensor& expected) {
  if (got.shape != expected.shape) throw std::invalid_argument("output shapes differ");
  Agreement a;
  std::size_t equal = 0;
  for (std::size_t i = 0; i < got.data.size(); ++i) {
    const std::int64_t d = std::abs(static_cast<std::int64_t>(got.data[i]) - expected.data[i]);
    a.max_deviation = std::max(a.max_deviation, d);
    if (d == 0) ++equal;
  }
  a.exact = a.max_deviation == 0;
  a.rate = got.data.empty() ? 1.0 : static_cast<double>(equal) / got.data.size();
  return a;
}

void finalize_report(SimReport& r, int window) {
  r.spike_ratio = spike_ratio(r.counters.input_spikes, r.counters.values_encoded, window);
  r.speedup = ratio_or_zero(static_cast<double>(r.baseline.total_cycles),
                            static_cast<double>(r.counters.total_cycles));
  r.fetch_ratio = ratio_or_zero(static_cast<double>(r.baseline.weight_fetches),
                                static_cast<double>(r.counters.weight_fetches));
  r.computation_ratio = ratio_or_zero(static_cast<double>(r.counters.accumulate_ops),
                                      static_cast<double>(r.reference.accumulate_ops));
  r.traffic_ratio = ratio_or_zero(static_cast<double>(r.counters.values_encoded),
                                  static_cast<double>(r.reference.values_encoded));
  double accuracy = r.agreement.rate * 100.0;
  if (r.accuracy) {
    accuracy = *r.accuracy;
    r.accuracy_source = "external";
  } else {
    r.accuracy_source = "oracle-agreement";
  }
  r.fom = r.spike_ratio > 0.0 ? figure_of_merit(accuracy, r.spike_ratio) : 0.0;
}

nlohmann::ordered_json counters_to_json(const SimCounters& c) {
  return {{"total_cycles", c.total_cycles},       {"encoder_cycles", c.encoder_cycles},
          {"pe_cycles", c.pe_cycles},             {"weight_fetches", c.weight_fetches},
          {"input_spikes", c.input_spikes},       {"output_spikes", c.output_spikes},
          {"skipped_neurons", c.skipped_neurons}, {"accumulate_ops", c.accumulate_ops},
          {"values_encoded", c.values_encoded},   {"threshold_ops", c.threshold_ops},
          {"output_writes", c.output_writes}};
}

nlohmann::ordered_json to_json(const SimReport& r) {
  nlohmann::ordered_json j;
  j["config"] = r.config;
  j["seeds"] = r.seeds;
  j["counters"] = counters_to_json(r.counters);
  j["baseline_counters"] = counters_to_json(r.baseline);
  j["reference_counters"] = counters_to_json(r.reference);
  j["spike_ratio"] = r.spike_ratio;
  j["speedup"] = r.speedup;
  j["fetch_ratio"] = r.fetch_ratio;
  j["computation_ratio"] = r.computation_ratio;
  j["traffic_ratio"] = r.traffic_ratio;
  j["agreement"] = {{"exact", r.agreement.exact},
                    {"max_deviation", r.agreement.max_deviation},
                    {"rate", r.agreement.rate}};
  j["accuracy"] = r.accuracy ? nlohmann::ordered_json(*r.accuracy) : nlohmann::ordered_json();
  j["accuracy_source"] = r.accuracy_source;
  j["fom"] = r.fom;
  return j;
}

}  // namespace spikeenc
