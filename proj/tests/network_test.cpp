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

#include "spikeenc/network.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "spikeenc/manifest.hpp"

namespace spikeenc {
namespace {

namespace fs = std::filesystem;

NetworkSpec single_layer(LayerSpec layer, int bits = 4) {
  NetworkSpec net;
  net.encoding = EncodingParams::for_bits(bits);
  net.layers.push_back(std::move(layer));
  return net;
}

LayerSpec thresholded(LayerSpec layer, std::int64_t theta_dt, int delay = 16) {
  layer.theta_dt = theta_dt;
  layer.dt_delay = delay;
  return layer;
}

TEST(Oracle, WorkedExamples) {
  const auto net = single_layer(thresholded(LayerSpec::conv2d({2, 1, 1}, 1, 1, 1, 0, {4, 1}), 16));
  EXPECT_EQ(oracle_forward(Tensor({2, 1, 1}, {3, 5}), net).data, (std::vector<std::int32_t>{1}));

  const auto neg = single_layer(thresholded(LayerSpec::conv2d({2, 1, 1}, 1, 1, 1, 0, {-4, 1}), 1));
  EXPECT_EQ(oracle_forward(Tensor({2, 1, 1}, {3, 5}), neg).data, (std::vector<std::int32_t>{0}));

  // A = 16 * 16 with threshold 1 clamps to 15.
  const auto big = single_layer(thresholded(LayerSpec::conv2d({1, 1, 1}, 1, 1, 1, 0, {16}), 1));
  EXPECT_EQ(oracle_accumulate(Tensor({1, 1, 1}, {15}), big.layers[0]),
            (std::vector<std::int64_t>{240}));
  const auto huge = single_layer(thresholded(LayerSpec::conv2d({2, 1, 1}, 1, 1, 1, 0, {16, 16}), 1));
  EXPECT_EQ(oracle_forward(Tensor({2, 1, 1}, {8, 8}), huge).data, (std::vector<std::int32_t>{15}));
}

TEST(RunNetwork, ZeroInputZeroEverywhere) {
  const NetworkSpec net = random_network({}, 3);
  NetworkSpec tuned = net;
  tuned.arch.sb_enabled = tuned.arch.tsmle_enabled = tuned.arch.slcs_enabled = true;
  const NetworkResult r = run_network(Tensor(net.layers.front().in_shape), tuned);
  EXPECT_EQ(r.output, Tensor(net.layers.back().out_shape));
  EXPECT_EQ(r.counters.output_spikes, 0);
}

TEST(RunNetwork, MatchesOracleOnRandomNetworks) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const NetworkSpec net = random_network({}, seed);
    const Tensor input = random_input(net.layers.front().in_shape, 4, seed + 77);
    const NetworkResult r = run_network(input, net);
    ASSERT_EQ(r.output, oracle_forward(input, net)) << "seed " << seed;
    ASSERT_EQ(r.per_layer.size(), net.layers.size());
    ASSERT_EQ(run_baseline_network(input, net).output, r.output);
  }
}

TEST(RunNetwork, RandomNetworksFireAMeaningfulFraction) {
  int fired = 0;
  int total = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const NetworkSpec net = random_network({}, seed);
    const Tensor input = random_input(net.layers.front().in_shape, 4, seed + 77);
    const Tensor first = oracle_forward(input, single_layer(net.layers.front()));
    for (auto v : first.data) fired += v > 0;
    total += static_cast<int>(first.data.size());
  }
  EXPECT_GT(fired, total * 3 / 10);
  EXPECT_LT(fired, total * 7 / 10);
}

TEST(RunNetwork, SbNeverRaisesEncodedSpikes) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    NetworkSpec net = random_network({}, seed);
    const Tensor input = random_input(net.layers.front().in_shape, 4, seed);
    const auto plain = run_network(input, net).per_layer.front();
    net.arch.sb_enabled = true;
    const auto boosted = run_network(input, net).per_layer.front();
    ASSERT_LE(boosted.input_spikes, plain.input_spikes);
  }
}

TEST(RunNetwork, SgsOnlyZeroesOutputs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    NetworkSpec net = single_layer(random_network({}, seed).layers.front());
    Tensor input = random_input(net.layers.front().in_shape, 4, seed);
    for (auto& v : input.data) v = v < 8 ? 0 : v;
    const Tensor plain = run_network(input, net).output;
    net.arch.sgs_enabled = true;
    net.arch.sgs_tau = 3.0;
    const Tensor skipped = run_network(input, net).output;
    for (std::size_t i = 0; i < plain.data.size(); ++i) {
      ASSERT_TRUE(skipped.data[i] == plain.data[i] || skipped.data[i] == 0);
    }
  }
}

TEST(RunNetwork, ShapeErrors) {
  const NetworkSpec net = random_network({}, 1);
  EXPECT_THROW(run_network(Tensor({1, 1, 1}), net), std::invalid_argument);
  NetworkSpec broken = net;
  broken.layers.clear();
  EXPECT_THROW(broken.validate(), std::invalid_argument);
}

class ManifestTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("spikeenc_manifest_" + std::string(::testing::UnitTest::GetInstance()
                                                    ->current_test_info()
                                                    ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  ManifestError::Kind load_error(const fs::path& p) {
    try {
      load_network(p);
    } catch (const ManifestError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "load succeeded";
    return ManifestError::Kind::kMalformed;
  }

  fs::path dir_;
};

TEST_F(ManifestTest, RoundTrip) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    NetworkSpec net = random_network({}, seed);
    net.arch.tsmle_enabled = true;
    net.arch.dt_delay = 4;
    net.layers[0].sgs_tau = 0.25;
    save_network(net, dir_ / "net.json");
    EXPECT_EQ(load_network(dir_ / "net.json"), net);
  }
  const Tensor t = random_input({3, 4, 5}, 8, 9);
  save_tensor(t, dir_ / "input.json");
  EXPECT_EQ(load_tensor(dir_ / "input.json"), t);
}

TEST_F(ManifestTest, EmptyLayerListIsMalformed) {
  std::ofstream(dir_ / "empty.json")
      << R"({"format": "spikeenc-network", "version": 1,
             "encoding": {"bits": 4, "window": 16}, "layers": []})";
  EXPECT_EQ(load_error(dir_ / "empty.json"), ManifestError::Kind::kMalformed);
  std::ofstream(dir_ / "junk.json") << "{ not json";
  EXPECT_EQ(load_error(dir_ / "junk.json"), ManifestError::Kind::kMalformed);
}

TEST_F(ManifestTest, BlobErrorsAreDistinct) {
  const NetworkSpec net = random_network({}, 4);
  save_network(net, dir_ / "net.json");
  const fs::path blob = dir_ / "net.weights.bin";
  ASSERT_TRUE(fs::exists(blob));
  const auto size = fs::file_size(blob);

  // Flip one byte: checksum.
  {
    std::fstream f(blob, std::ios::in | std::ios::out | std::ios::binary);
    f.seekg(0);
    char b = 0;
    f.read(&b, 1);
    b = static_cast<char>(b ^ 0x5a);
    f.seekp(0);
    f.write(&b, 1);
  }
  EXPECT_EQ(load_error(dir_ / "net.json"), ManifestError::Kind::kChecksumMismatch);

  save_network(net, dir_ / "net.json");
  fs::resize_file(blob, size - 3);
  EXPECT_EQ(load_error(dir_ / "net.json"), ManifestError::Kind::kTruncatedBlob);

  fs::remove(blob);
  EXPECT_EQ(load_error(dir_ / "net.json"), ManifestError::Kind::kMissingBlob);
}

TEST(Crc32, KnownVector) {
  const std::string s = "123456789";
  EXPECT_EQ(crc32_of({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}), 0xCBF43926u);
}

}  // namespace
}  // namespace spikeenc
