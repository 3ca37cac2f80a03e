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

// Source encoding: eigen-train generation, superposition, sparsity boosting,
// and the rate / TTFS / phase baselines used for comparison.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace spikeenc {

/// Bit width and time window of one encoded value.
///
/// The eigen-train encoder always runs with window == 2^bits. Baseline
/// encoders accept any positive window (phase coding additionally needs a
/// multiple of `bits`).
struct EncodingParams {
  int bits = 4;
  int window = 16;

  /// Builds params with window = 2^bits. Throws std::invalid_argument unless
  /// bits is one of 2, 4, 6, 8.
  static EncodingParams for_bits(int bits);

  std::int32_t max_value() const { return (std::int32_t{1} << bits) - 1; }
  bool eigen_window() const { return window == (1 << bits); }

  /// Throws std::invalid_argument on an unsupported bit width or window.
  void validate() const;

  friend bool operator==(const EncodingParams&, const EncodingParams&) = default;
};

/// Binary occupancy over a time window.
class SpikeTrain {
 public:
  SpikeTrain() = default;
  explicit SpikeTrain(int window);

  int window() const { return static_cast<int>(bits_.size()); }
  bool at(int t) const { return bits_.at(static_cast<std::size_t>(t)) != 0; }
  void set(int t);

  std::span<const std::uint8_t> bits() const { return bits_; }
  std::vector<int> spike_times() const;

  /// Count of spikes inside [begin, end).
  int count_in(int begin, int end) const;

  friend bool operator==(const SpikeTrain&, const SpikeTrain&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

struct EigenTrain {
  int bit_position = 0;
  int period = 0;
  std::vector<int> spikes;
};

/// The fixed pattern for bit `n`: 2^n spikes spaced 2^(m-n) apart, starting
/// at 2^(m-n-1) - 1. Offsets are chosen so that patterns of different bits
/// never share a time slot.
EigenTrain eigen_train(int n, const EncodingParams& params);

/// OR of the eigen-trains of every set bit of `value`. Spike count == value.
SpikeTrain superpose(std::int32_t value, const EncodingParams& params);

/// Rewrites the low-order 2-bit groups of `value`: a group is zeroed when the
/// group two above it is nonzero, otherwise halved when the group directly
/// above it is nonzero. Conditions read the original value.
std::int32_t sparsity_boost(std::int32_t value, const EncodingParams& params);

int spike_count(const SpikeTrain& train);

/// 16-bit Fibonacci LFSR, taps x^16 + x^14 + x^13 + x^11 + 1.
class Lfsr {
 public:
  static constexpr std::uint16_t kDefaultSeed = 0xACE1;

  explicit Lfsr(std::uint16_t seed = kDefaultSeed);

  std::uint16_t state() const { return state_; }

  /// Shifts once and returns the new state.
  std::uint16_t next();

 private:
  std::uint16_t state_;
};

/// Spike at step t iff value > (t-th LFSR draw mod 2^bits). Advances `lfsr`
/// by params.window steps.
SpikeTrain encode_rate(std::int32_t value, const EncodingParams& params, Lfsr& lfsr);

/// One spike at floor((2^bits - value) * window / 2^bits), none for zero.
SpikeTrain encode_ttfs(std::int32_t value, const EncodingParams& params);

struct PhaseTrain {
  SpikeTrain train;
  /// Weight carried by a spike at each step: 2^(bits-1-phase).
  std::vector<std::int32_t> weights;

  std::int64_t weighted_sum() const;
};

/// Within every `bits`-step period, phase p fires iff bit (bits-1-p) is set.
PhaseTrain encode_phase(std::int32_t value, const EncodingParams& params);

enum class Encoder { kEtg, kEtgSb, kRate, kTtfs, kPhase };

std::string_view to_string(Encoder encoder);
/// Throws std::invalid_argument on an unknown name.
Encoder parse_encoder(std::string_view name);

/// Encodes with any of the supported schemes. Rate coding draws from `lfsr`.
SpikeTrain encode(Encoder encoder, std::int32_t value, const EncodingParams& params,
                  Lfsr& lfsr);

}  // namespace spikeenc
