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

#include "spikeenc/codec.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace spikeenc {
namespace {

void check_value(std::int32_t value, const EncodingParams& params) {
  if (value < 0 || value > params.max_value()) {
    throw std::invalid_argument("value " + std::to_string(value) + " outside [0, 2^" +
                                std::to_string(params.bits) + ")");
  }
}

void check_eigen(const EncodingParams& params) {
  params.validate();
  if (!params.eigen_window()) {
    throw std::invalid_argument("eigen-train encoding needs window == 2^bits");
  }
}

}  // namespace

EncodingParams EncodingParams::for_bits(int bits) {
  EncodingParams params{bits, 0};
  if (bits == 2 || bits == 4 || bits == 6 || bits == 8) params.window = 1 << bits;
  params.validate();
  return params;
}

void EncodingParams::validate() const {
  if (bits != 2 && bits != 4 && bits != 6 && bits != 8) {
    throw std::invalid_argument("bit width must be one of 2, 4, 6, 8; got " +
                                std::to_string(bits));
  }
  if (window < 1) throw std::invalid_argument("time window must be positive");
}

SpikeTrain::SpikeTrain(int window) {
  if (window < 0) throw std::invalid_argument("negative spike-train window");
  bits_.assign(static_cast<std::size_t>(window), 0);
}

void SpikeTrain::set(int t) { bits_.at(static_cast<std::size_t>(t)) = 1; }

std::vector<int> SpikeTrain::spike_times() const {
  std::vector<int> times;
  for (int t = 0; t < window(); ++t) {
    if (bits_[static_cast<std::size_t>(t)] != 0) times.push_back(t);
  }
  return times;
}

int SpikeTrain::count_in(int begin, int end) const {
  begin = std::max(begin, 0);
  end = std::min(end, window());
  if (begin >= end) return 0;
  return static_cast<int>(std::count(bits_.begin() + begin, bits_.begin() + end, 1));
}

EigenTrain eigen_train(int n, const EncodingParams& params) {
  check_eigen(params);
  if (n < 0 || n >= params.bits) {
    throw std::invalid_argument("bit position " + std::to_string(n) + " outside [0, " +
                                std::to_string(params.bits) + ")");
  }
  const int shift = params.bits - n;
  EigenTrain train{n, 1 << shift, {}};
  const int offset = (1 << (shift - 1)) - 1;
  train.spikes.reserve(std::size_t{1} << n);
  for (int t = offset; t < params.window; t += train.period) train.spikes.push_back(t);
  return train;
}

SpikeTrain superpose(std::int32_t value, const EncodingParams& params) {
  check_eigen(params);
  check_value(value, params);
  SpikeTrain train(params.window);
  for (int n = 0; n < params.bits; ++n) {
    if (((value >> n) & 1) == 0) continue;
    for (int t : eigen_train(n, params).spikes) train.set(t);
  }
  return train;
}

std::int32_t sparsity_boost(std::int32_t value, const EncodingParams& params) {
  params.validate();
  check_value(value, params);
  const int groups = params.bits / 2;
  auto group = [&](int i) -> std::int32_t {
    return i < groups ? (value >> (2 * i)) & 3 : 0;
  };
  std::int32_t result = value;
  // Only groups lying entirely in the low half are rewritten.
  for (int i = 0; 2 * i + 2 <= params.bits / 2; ++i) {
    std::int32_t g = group(i);
    if (group(i + 2) != 0) {
      g = 0;
    } else if (group(i + 1) != 0) {
      g >>= 1;
    }
    result = (result & ~(3 << (2 * i))) | (g << (2 * i));
  }
  return result;
}

int spike_count(const SpikeTrain& train) { return train.count_in(0, train.window()); }

Lfsr::Lfsr(std::uint16_t seed) : state_(seed) {
  if (seed == 0) throw std::invalid_argument("LFSR seed must be nonzero");
}

std::uint16_t Lfsr::next() {
  const unsigned feedback =
      ((state_ >> 0) ^ (state_ >> 2) ^ (state_ >> 3) ^ (state_ >> 5)) & 1u;
  state_ = static_cast<std::uint16_t>((state_ >> 1) | (feedback << 15));
  return state_;
}

SpikeTrain encode_rate(std::int32_t value, const EncodingParams& params, Lfsr& lfsr) {
  params.validate();
  check_value(value, params);
  SpikeTrain train(params.window);
  const std::uint32_t mask = static_cast<std::uint32_t>(params.max_value());
  for (int t = 0; t < params.window; ++t) {
    const std::uint32_t draw = lfsr.next() & mask;
    if (static_cast<std::uint32_t>(value) > draw) train.set(t);
  }
  return train;
}

SpikeTrain encode_ttfs(std::int32_t value, const EncodingParams& params) {
  params.validate();
  check_value(value, params);
  SpikeTrain train(params.window);
  if (value == 0) return train;
  const std::int64_t full = std::int64_t{1} << params.bits;
  const std::int64_t t = (full - value) * params.window / full;
  train.set(static_cast<int>(std::clamp<std::int64_t>(t, 0, params.window - 1)));
  return train;
}

std::int64_t PhaseTrain::weighted_sum() const {
  std::int64_t sum = 0;
  for (int t = 0; t < train.window(); ++t) {
    if (train.at(t)) sum += weights[static_cast<std::size_t>(t)];
  }
  return sum;
}

PhaseTrain encode_phase(std::int32_t value, const EncodingParams& params) {
  params.validate();
  check_value(value, params);
  if (params.window % params.bits != 0) {
    throw std::invalid_argument("phase coding needs a window that is a multiple of the bit width");
  }
  PhaseTrain out{SpikeTrain(params.window), {}};
  out.weights.resize(static_cast<std::size_t>(params.window));
  for (int t = 0; t < params.window; ++t) {
    const int bit = params.bits - 1 - t % params.bits;
    out.weights[static_cast<std::size_t>(t)] = std::int32_t{1} << bit;
    if ((value >> bit) & 1) out.train.set(t);
  }
  return out;
}

std::string_view to_string(Encoder encoder) {
  switch (encoder) {
    case Encoder::kEtg: return "etg";
    case Encoder::kEtgSb: return "etg+sb";
    case Encoder::kRate: return "rate";
    case Encoder::kTtfs: return "ttfs";
    case Encoder::kPhase: return "phase";
  }
  return "unknown";
}

Encoder parse_encoder(std::string_view name) {
  for (Encoder e : {Encoder::kEtg, Encoder::kEtgSb, Encoder::kRate, Encoder::kTtfs,
                    Encoder::kPhase}) {
    if (to_string(e) == name) return e;
  }
  throw std::invalid_argument("unknown encoder '" + std::string(name) + "'");
}

SpikeTrain encode(Encoder encoder, std::int32_t value, const EncodingParams& params,
                  Lfsr& lfsr) {
  switch (encoder) {
    case Encoder::kEtg: return superpose(value, params);
    case Encoder::kEtgSb: return superpose(sparsity_boost(value, params), params);
    case Encoder::kRate: return encode_rate(value, params, lfsr);
    case Encoder::kTtfs: return encode_ttfs(value, params);
    case Encoder::kPhase: return encode_phase(value, params).train;
  }
  throw std::invalid_argument("unknown encoder");
}

}  // namespace spikeenc
