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

#include "spikeenc/manifest.hpp"

#include <zlib.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iterator>
#include "json.hpp"
#include <sstream>
#include <vector>

namespace spikeenc {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kNetworkFormat = "spikeenc-network";
constexpr const char* kTensorFormat = "spikeenc-tensor";

[[noreturn]] void malformed(const std::string& what) {
  throw ManifestError(ManifestError::Kind::kMalformed, what);
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    malformed(path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_bytes(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ManifestError(ManifestError::Kind::kMissingBlob, "missing blob " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string crc_hex(std::uint32_t crc) {
  std::ostringstream os;
  os << "0x" << std::hex << std::setw(8) << std::setfill('0') << crc;
  return os.str();
}

std::uint32_t parse_crc(const json& j) {
  const std::string text = j.get<std::string>();
  try {
    std::size_t used = 0;
    const unsigned long value = std::stoul(text, &used, 16);
    if (used != text.size() || value > 0xffffffffUL) malformed("bad crc32 '" + text + "'");
    return static_cast<std::uint32_t>(value);
  } catch (const std::logic_error&) {
    malformed("bad crc32 '" + text + "'");
  }
}

// Returns `length` bytes at `offset` of the blob after checking size and CRC.
std::vector<std::uint8_t> blob_slice(const fs::path& base, const json& entry, std::size_t length,
                                     const std::string& what) {
  const fs::path blob = base / entry.at("blob").get<std::string>();
  const std::vector<std::uint8_t> bytes = read_bytes(blob);
  const auto offset = entry.at("offset").get<std::uint64_t>();
  if (offset > bytes.size() || bytes.size() - offset < length) {
    throw ManifestError(ManifestError::Kind::kTruncatedBlob,
                        what + ": blob " + blob.string() + " holds " +
                            std::to_string(bytes.size()) + " bytes, need " +
                            std::to_string(offset + length));
  }
  std::vector<std::uint8_t> slice(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                                  bytes.begin() + static_cast<std::ptrdiff_t>(offset + length));
  const std::uint32_t expected = parse_crc(entry.at("crc32"));
  const std::uint32_t actual = crc32_of(slice);
  if (expected != actual) {
    throw ManifestError(ManifestError::Kind::kChecksumMismatch,
                        what + ": crc32 " + crc_hex(actual) + " != declared " + crc_hex(expected));
  }
  return slice;
}

Shape shape_from(const json& j) {
  const auto dims = j.get<std::vector<int>>();
  if (dims.size() != 3) malformed("shape must have 3 entries");
  return {dims[0], dims[1], dims[2]};
}

json shape_to(const Shape& s) { return json::array({s.channels, s.height, s.width}); }

json arch_to(const ArchConfig& a) {
  json j = {{"pe_rows", a.pe_rows},
            {"pe_cols", a.pe_cols},
            {"encoder_steps_per_cycle", a.encoder_steps_per_cycle},
            {"sb", a.sb_enabled},
            {"sgs", a.sgs_enabled},
            {"tsmle", a.tsmle_enabled},
            {"slcs", a.slcs_enabled},
            {"tsmle_window", a.tsmle_window},
            {"levels", a.levels}};
  j["dt_delay"] = a.dt_delay ? json(*a.dt_delay) : json(nullptr);
  j["sgs_tau"] = a.sgs_tau ? json(*a.sgs_tau) : json(nullptr);
  return j;
}

ArchConfig arch_from(const json& j) {
  ArchConfig a;
  a.pe_rows = j.at("pe_rows").get<int>();
  a.pe_cols = j.at("pe_cols").get<int>();
  a.encoder_steps_per_cycle = j.at("encoder_steps_per_cycle").get<int>();
  a.sb_enabled = j.at("sb").get<bool>();
  a.sgs_enabled = j.at("sgs").get<bool>();
  a.tsmle_enabled = j.at("tsmle").get<bool>();
  a.slcs_enabled = j.at("slcs").get<bool>();
  a.tsmle_window = j.at("tsmle_window").get<int>();
  a.levels = j.at("levels").get<int>();
  if (j.contains("dt_delay") && !j.at("dt_delay").is_null()) a.dt_delay = j.at("dt_delay").get<int>();
  if (j.contains("sgs_tau") && !j.at("sgs_tau").is_null()) a.sgs_tau = j.at("sgs_tau").get<double>();
  return a;
}

void put_le32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::int32_t get_le32(const std::uint8_t* p) {
  const std::uint32_t v = std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) |
                          (std::uint32_t{p[2]} << 16) | (std::uint32_t{p[3]} << 24);
  return static_cast<std::int32_t>(v);
}

}  // namespace

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large buffers in pieces.
  std::size_t done = 0;
  while (done < bytes.size()) {
    const auto piece = static_cast<uInt>(std::min<std::size_t>(bytes.size() - done, 1u << 30));
    crc = ::crc32(crc, bytes.data() + done, piece);
    done += piece;
  }
  return static_cast<std::uint32_t>(crc);
}

NetworkSpec load_network(const fs::path& manifest) {
  const json doc = read_json(manifest);
  const fs::path base = manifest.parent_path();
  NetworkSpec net;
  try {
    if (doc.at("format").get<std::string>() != kNetworkFormat) malformed("not a network manifest");
    if (doc.at("version").get<int>() != 1) malformed("unsupported manifest version");
    const json& enc = doc.at("encoding");
    net.encoding = EncodingParams{enc.at("bits").get<int>(), enc.at("window").get<int>()};
    net.arch = arch_from(doc.at("arch"));
    if (doc.contains("generator_seed") && !doc.at("generator_seed").is_null()) {
      net.generator_seed = doc.at("generator_seed").get<std::uint64_t>();
    }
    const json& layers = doc.at("layers");
    if (!layers.is_array() || layers.empty()) malformed("manifest declares no layers");
    for (std::size_t i = 0; i < layers.size(); ++i) {
      const json& entry = layers[i];
      LayerSpec layer;
      layer.kind = parse_layer_kind(entry.at("kind").get<std::string>());
      layer.in_shape = shape_from(entry.at("in_shape"));
      layer.out_shape = shape_from(entry.at("out_shape"));
      const auto kernel = entry.at("kernel").get<std::vector<int>>();
      if (kernel.size() != 2) malformed("kernel must have 2 entries");
      layer.kernel_h = kernel[0];
      layer.kernel_w = kernel[1];
      layer.stride = entry.at("stride").get<int>();
      layer.padding = entry.at("padding").get<int>();
      layer.theta = entry.at("theta").get<std::int64_t>();
      layer.theta_dt = entry.at("theta_dt").get<std::int64_t>();
      layer.dt_delay = entry.at("dt_delay").get<int>();
      layer.sgs_tau = entry.at("sgs_tau").get<double>();
      if (layer.out_shape.channels < 1 || layer.in_shape.channels < 1 || layer.kernel_h < 1 ||
          layer.kernel_w < 1) {
        malformed("layer " + std::to_string(i) + " has an empty weight tensor");
      }
      const Shape weight_shape{layer.out_shape.channels * layer.in_shape.channels,
                               layer.kernel_h, layer.kernel_w};
      const std::vector<std::uint8_t> bytes =
          blob_slice(base, entry, weight_shape.size() * 4, "layer " + std::to_string(i));
      layer.weights.resize(weight_shape.size());
      for (std::size_t w = 0; w < layer.weights.size(); ++w) {
        layer.weights[w] = get_le32(bytes.data() + 4 * w);
      }
      net.layers.push_back(std::move(layer));
    }
  } catch (const json::exception& e) {
    malformed(manifest.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    malformed(manifest.string() + ": " + e.what());
  }
  try {
    net.validate();
  } catch (const std::invalid_argument& e) {
    malformed(manifest.string() + ": " + e.what());
  }
  return net;
}

void save_network(const NetworkSpec& net, const fs::path& manifest) {
  net.validate();
  const std::string blob_name = manifest.stem().string() + ".weights.bin";
  std::vector<std::uint8_t> blob;
  json layers = json::array();
  for (const LayerSpec& layer : net.layers) {
    const std::size_t offset = blob.size();
    for (std::int32_t w : layer.weights) put_le32(blob, static_cast<std::uint32_t>(w));
    const std::uint32_t crc = crc32_of(std::span(blob).subspan(offset));
    layers.push_back({{"kind", std::string(to_string(layer.kind))},
                      {"in_shape", shape_to(layer.in_shape)},
                      {"out_shape", shape_to(layer.out_shape)},
                      {"kernel", json::array({layer.kernel_h, layer.kernel_w})},
                      {"stride", layer.stride},
                      {"padding", layer.padding},
                      {"theta", layer.theta},
                      {"theta_dt", layer.theta_dt},
                      {"dt_delay", layer.dt_delay},
                      {"sgs_tau", layer.sgs_tau},
                      {"blob", blob_name},
                      {"offset", offset},
                      {"crc32", crc_hex(crc)}});
  }
  json doc = {{"format", kNetworkFormat},
              {"version", 1},
              {"encoding", {{"bits", net.encoding.bits}, {"window", net.encoding.window}}},
              {"arch", arch_to(net.arch)}};
  doc["generator_seed"] = net.generator_seed ? json(*net.generator_seed) : json(nullptr);
  doc["layers"] = std::move(layers);
  write_bytes(manifest.parent_path() / blob_name, blob);
  write_text(manifest, doc.dump(2) + "\n");
}

Tensor load_tensor(const fs::path& descriptor) {
  const json doc = read_json(descriptor);
  try {
    if (doc.at("format").get<std::string>() != kTensorFormat) malformed("not a tensor descriptor");
    if (doc.at("dtype").get<std::string>() != "u8") malformed("tensor dtype must be u8");
    const Shape shape = shape_from(doc.at("shape"));
    if (shape.channels < 1 || shape.height < 1 || shape.width < 1) malformed("empty tensor shape");
    const std::vector<std::uint8_t> bytes =
        blob_slice(descriptor.parent_path(), doc, shape.size(), descriptor.string());
    return Tensor(shape, std::vector<std::int32_t>(bytes.begin(), bytes.end()));
  } catch (const json::exception& e) {
    malformed(descriptor.string() + ": " + e.what());
  }
}

void save_tensor(const Tensor& tensor, const fs::path& descriptor) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(tensor.data.size());
  for (std::int32_t v : tensor.data) {
    if (v < 0 || v > 255) throw std::invalid_argument("tensor value does not fit in u8");
    bytes.push_back(static_cast<std::uint8_t>(v));
  }
  const std::string blob_name = descriptor.stem().string() + ".bin";
  const json doc = {{"format", kTensorFormat}, {"version", 1},
                    {"shape", shape_to(tensor.shape)}, {"dtype", "u8"},
                    {"blob", blob_name}, {"offset", 0},
                    {"crc32", crc_hex(crc32_of(bytes))}};
  write_bytes(descriptor.parent_path() / blob_name, bytes);
  write_text(descriptor, doc.dump(2) + "\n");
}

}  // namespace spikeenc
