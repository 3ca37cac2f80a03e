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

#include "commands.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "spikeenc/manifest.hpp"

namespace spikeenc::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string c; std::getline(in, c, ',');) out.push_back(c);
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("spikeenc_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    generate(3);
  }

  void generate(int layers) {
    GenOptions net;
    net.kind = "network";
    net.layers = layers;
    net.common.seed = 5;
    net.common.out = (dir_ / "net.json").string();
    std::ostringstream sink;
    ASSERT_EQ(cmd_gen(net, sink), kOk);

    const NetworkSpec spec = load_network(dir_ / "net.json");
    const Shape in = spec.layers.front().in_shape;
    GenOptions tensor;
    tensor.shape = std::to_string(in.channels) + "," + std::to_string(in.height) + "," +
                   std::to_string(in.width);
    tensor.sigma = 0.3;
    tensor.common.seed = 6;
    tensor.common.out = (dir_ / "input.json").string();
    ASSERT_EQ(cmd_gen(tensor, sink), kOk);
  }
  void TearDown() override { fs::remove_all(dir_); }

  RunOptions run_options() const {
    RunOptions o;
    o.manifest = (dir_ / "net.json").string();
    o.input = (dir_ / "input.json").string();
    o.common.format = "json";
    return o;
  }

  json run_json(const RunOptions& o, int expect = kOk) {
    std::ostringstream out;
    EXPECT_EQ(cmd_run(o, out), expect) << out.str();
    return json::parse(out.str().substr(0, out.str().rfind('}') + 1));
  }

  fs::path dir_;
};

TEST_F(CliTest, RunReportSchema) {
  const json j = run_json(run_options());
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  std::sort(keys.begin(), keys.end());
  EXPECT_EQ(keys, (std::vector<std::string>{
                      "accuracy", "accuracy_source", "agreement", "baseline_counters",
                      "computation_ratio", "config", "counters", "fetch_ratio", "fom",
                      "reference_counters", "seeds", "speedup", "spike_ratio", "traffic_ratio"}));
  std::vector<std::string> counter_keys;
  for (auto it = j["counters"].begin(); it != j["counters"].end(); ++it) {
    counter_keys.push_back(it.key());
  }
  EXPECT_EQ(counter_keys, (std::vector<std::string>{
                              "total_cycles", "encoder_cycles", "pe_cycles", "weight_fetches",
                              "input_spikes", "output_spikes", "skipped_neurons",
                              "accumulate_ops", "values_encoded", "threshold_ops",
                              "output_writes"}));
  EXPECT_EQ(j["accuracy_source"], "oracle-agreement");
  EXPECT_EQ(j["seeds"], json::array({5, kDefaultSeed}));
}

TEST_F(CliTest, FeaturesOffAgreesWithOracle) {
  const json j = run_json(run_options());
  EXPECT_TRUE(j["agreement"]["exact"].get<bool>());
  EXPECT_EQ(j["agreement"]["max_deviation"], 0);
  EXPECT_DOUBLE_EQ(j["speedup"].get<double>(), 1.0);
  const double ratio = j["spike_ratio"].get<double>();
  const auto& c = j["counters"];
  EXPECT_DOUBLE_EQ(ratio, c["input_spikes"].get<double>() /
                              (c["values_encoded"].get<double>() * 16.0));
}

TEST_F(CliTest, ZeroSkippingThresholdChangesNothing) {
  RunOptions o = run_options();
  const json off = run_json(o);
  o.features.sgs_threshold = 0.0;
  const json zero = run_json(o);
  EXPECT_EQ(zero["counters"]["output_spikes"], off["counters"]["output_spikes"]);
  EXPECT_EQ(zero["counters"]["skipped_neurons"], 0);
  EXPECT_TRUE(zero["agreement"]["exact"].get<bool>());
}

TEST_F(CliTest, SbLowersAccumulations) {
  // One layer: deeper layers see SB-changed counts through signed weights.
  generate(1);
  RunOptions o = run_options();
  const json off = run_json(o);
  o.features.sb = true;
  const json on = run_json(o);
  EXPECT_LT(on["counters"]["accumulate_ops"].get<std::int64_t>(),
            off["counters"]["accumulate_ops"].get<std::int64_t>());
}

TEST_F(CliTest, RunIsDeterministic) {
  RunOptions o = run_options();
  o.features.tsmle = o.features.slcs = true;
  o.common.out = (dir_ / "a.json").string();
  std::ostringstream sink;
  ASSERT_EQ(cmd_run(o, sink), kOk);
  o.common.out = (dir_ / "b.json").string();
  ASSERT_EQ(cmd_run(o, sink), kOk);
  EXPECT_EQ(slurp(dir_ / "a.json"), slurp(dir_ / "b.json"));
}

TEST_F(CliTest, RunErrors) {
  RunOptions o = run_options();
  o.common.format = "yaml";
  std::ostringstream sink;
  EXPECT_THROW(cmd_run(o, sink), UsageError);
  o = run_options();
  o.features.dt_delay = 3;
  EXPECT_THROW(cmd_run(o, sink), UsageError);
  o = run_options();
  o.manifest = (dir_ / "missing.json").string();
  EXPECT_THROW(cmd_run(o, sink), ManifestError);
}

TEST(Sweep, DelayGridGivesFetchRatioEqualToDelay) {
  SweepOptions o;
  o.common.format = "csv";
  o.grid = {"dt_delay=1,2,4,8,16"};
  o.jobs = 2;
  std::ostringstream out;
  ASSERT_EQ(cmd_sweep(o, out), kOk);
  const auto lines = csv_lines(out.str());
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0],
            "dt_delay,encoder_spike_ratio,spike_ratio,speedup,fetch_ratio,computation_ratio,"
            "traffic_ratio,total_cycles,baseline_cycles,pe_cycles,encoder_cycles,weight_fetches,"
            "input_spikes,output_spikes,skipped_neurons,accumulate_ops,oracle_exact,"
            "max_deviation,fom");
  const char* delays[] = {"1", "2", "4", "8", "16"};
  for (int i = 0; i < 5; ++i) {
    const auto row = cells(lines[static_cast<std::size_t>(i) + 1]);
    EXPECT_EQ(row[0], delays[i]);
    EXPECT_DOUBLE_EQ(std::stod(row[4]), std::stod(delays[i]));
  }
  // Full-window thresholding is exact.
  EXPECT_EQ(cells(lines[5])[16], "1");
}

TEST(Sweep, TtfsHasAtMostOneSpikePerValue) {
  SweepOptions o;
  o.common.format = "csv";
  o.grid = {"encoder=etg,rate,ttfs,phase"};
  std::ostringstream out;
  ASSERT_EQ(cmd_sweep(o, out), kOk);
  const auto lines = csv_lines(out.str());
  ASSERT_EQ(lines.size(), 5u);
  double lowest = 1.0;
  std::string lowest_name;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = cells(lines[i]);
    const double ratio = std::stod(row[1]);
    if (ratio < lowest) {
      lowest = ratio;
      lowest_name = row[0];
    }
  }
  EXPECT_EQ(lowest_name, "ttfs");
  EXPECT_LE(lowest, 1.0 / 16.0);
}

TEST(Sweep, EmptyOrBadGridIsAUsageError) {
  SweepOptions o;
  o.common.format = "csv";
  std::ostringstream out;
  EXPECT_THROW(cmd_sweep(o, out), UsageError);
  o.grid = {"colour=red"};
  EXPECT_THROW(cmd_sweep(o, out), UsageError);
  o.grid = {"dt_delay="};
  EXPECT_THROW(cmd_sweep(o, out), UsageError);
}

TEST(Sweep, RowOrderIndependentOfWorkers) {
  SweepOptions o;
  o.common.format = "csv";
  o.grid = {"tsmle=0,1", "slcs=0,1"};
  o.jobs = 1;
  std::ostringstream serial;
  ASSERT_EQ(cmd_sweep(o, serial), kOk);
  o.jobs = 4;
  std::ostringstream parallel;
  ASSERT_EQ(cmd_sweep(o, parallel), kOk);
  EXPECT_EQ(serial.str(), parallel.str());
}

TEST(Compare, FomFromSuppliedRatio) {
  CompareOptions o;
  o.common.accuracy = "90.3";
  o.spike_ratio_percent = 4.18;
  std::ostringstream out;
  ASSERT_EQ(cmd_compare(o, out), kOk);
  EXPECT_EQ(out.str(), "FOM 21.6\n");
  o.common.accuracy = "85.0";
  o.spike_ratio_percent = 4.03;
  std::ostringstream rate;
  ASSERT_EQ(cmd_compare(o, rate), kOk);
  EXPECT_EQ(rate.str(), "FOM 21.1\n");
}

TEST(Compare, CsvSchemaAndZeroTensor) {
  CompareOptions o;
  o.common.format = "csv";
  o.sigma = 0.0;
  o.shape = "1,4,4";
  std::ostringstream out;
  ASSERT_EQ(cmd_compare(o, out), kOk);
  const auto lines = csv_lines(out.str());
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0], "encoder,spikes,values,spike_ratio,accuracy,fom");
  for (std::size_t i = 1; i < lines.size(); ++i) EXPECT_EQ(cells(lines[i])[1], "0") << lines[i];
}

TEST(Encode, TrainDumpAndErrors) {
  EncodeOptions o;
  o.values = "0,5,15";
  o.common.format = "json";
  const fs::path path = fs::temp_directory_path() / "spikeenc_encode_test.json";
  o.common.out = path.string();
  std::ostringstream out;
  ASSERT_EQ(cmd_encode(o, out), kOk);
  const json j = json::parse(slurp(path));
  fs::remove(path);
  EXPECT_EQ(j["trains"][1], "0100010101000100");
  EXPECT_EQ(j["spikes"], 20);
  EXPECT_DOUBLE_EQ(j["spike_ratio"].get<double>(), 20.0 / 48.0);

  o.encoder = "latency";
  EXPECT_THROW(cmd_encode(o, out), UsageError);
  o.encoder = "etg";
  o.common.tw = 8;
  EXPECT_THROW(cmd_encode(o, out), UsageError);
}

}  // namespace
}  // namespace spikeenc::cli
