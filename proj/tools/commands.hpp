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

// Subcommand implementations for the spikeenc tool. Each returns the process
// exit code and writes human output to `out`.

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spikeenc/simulator.hpp"

namespace spikeenc::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kInvariant = 3 };

/// Bad flag values or combinations; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSeed = 0xACE1;

struct CommonOptions {
  int bits = 4;
  std::optional<int> tw;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::string format = "table";
  /// Either one number or "encoder=value,..." pairs.
  std::optional<std::string> accuracy;
};

struct FeatureOptions {
  bool sb = false;
  std::optional<double> sgs_threshold;
  std::optional<int> dt_delay;
  bool tsmle = false;
  std::optional<int> tsmle_window;
  std::optional<int> levels;
  bool slcs = false;
  std::optional<int> pe_rows;
  std::optional<int> pe_cols;

  void apply(ArchConfig& arch) const;
};

struct EncodeOptions {
  CommonOptions common;
  std::string encoder = "etg";
  std::string values;
  std::string input;
};

struct RunOptions {
  CommonOptions common;
  std::string manifest;
  std::string input;
  FeatureOptions features;
};

struct CompareOptions {
  CommonOptions common;
  std::string input;
  std::string shape = "1,100,100";
  double sigma = -1.0;  // negative: library default
  std::optional<double> spike_ratio_percent;
  std::string encoders = "rate,ttfs,phase,etg,etg+sb";
};

struct SweepOptions {
  CommonOptions common;
  std::string manifest;
  std::string input;
  std::vector<std::string> grid;
  FeatureOptions features;
  int jobs = 0;  // 0: hardware concurrency
};

struct GenOptions {
  CommonOptions common;
  std::string kind = "tensor";
  std::string shape = "16,16,16";
  double sigma = -1.0;
  int layers = 3;
  int max_channels = 8;
  int max_spatial = 8;
};

int cmd_encode(const EncodeOptions& opts, std::ostream& out);
int cmd_run(const RunOptions& opts, std::ostream& out);
int cmd_compare(const CompareOptions& opts, std::ostream& out);
int cmd_sweep(const SweepOptions& opts, std::ostream& out);
int cmd_gen(const GenOptions& opts, std::ostream& out);

}  // namespace spikeenc::cli
