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

// On-disk formats.
//
// A network manifest is a JSON document:
//
//   {
//     "format": "spikeenc-network", "version": 1,
//     "encoding": {"bits": 4, "window": 16},
//     "arch": {"pe_rows": 8, "pe_cols": 1, "encoder_steps_per_cycle": 8,
//              "sb": false, "sgs": false, "tsmle": false, "slcs": false,
//              "tsmle_window": 8, "levels": 4, "dt_delay": null, "sgs_tau": null},
//     "generator_seed": 7,                       // optional
//     "layers": [
//       {"kind": "conv2d", "in_shape": [C, H, W], "out_shape": [C, H, W],
//        "kernel": [Ky, Kx], "stride": 1, "padding": 1,
//        "theta": 1, "theta_dt": 16, "dt_delay": 16, "sgs_tau": 0.0,
//        "blob": "net.weights.bin", "offset": 0, "crc32": "0x1c291ca3"}
//     ]
//   }
//
// Weight blobs hold little-endian int32 in (out, in, ky, kx) order; "blob" is
// resolved relative to the manifest and the checksum is the CRC-32 of the
// layer's byte range. Tensor files use the same container with
// "format": "spikeenc-tensor", a "shape" and unsigned 8-bit values.

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>

#include "spikeenc/layer.hpp"
#include "spikeenc/network.hpp"

namespace spikeenc {

class ManifestError : public std::runtime_error {
 public:
  enum class Kind { kMalformed, kMissingBlob, kTruncatedBlob, kChecksumMismatch };

  ManifestError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes);

NetworkSpec load_network(const std::filesystem::path& manifest);

/// Writes the manifest and a sibling "<stem>.weights.bin" blob.
void save_network(const NetworkSpec& net, const std::filesystem::path& manifest);

Tensor load_tensor(const std::filesystem::path& descriptor);

/// Writes the descriptor and a sibling "<stem>.bin" blob. Values must fit in
/// 8 bits.
void save_tensor(const Tensor& tensor, const std::filesystem::path& descriptor);

}  // namespace spikeenc
