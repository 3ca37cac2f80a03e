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

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "spikeenc/manifest.hpp"

using namespace spikeenc::cli;

namespace {

void add_common(CLI::App* cmd, CommonOptions& c, bool with_accuracy) {
  cmd->add_option("--bits", c.bits, "Bit width of encoded values (2, 4, 6, 8)");
  cmd->add_option("--tw", c.tw, "Time window in steps (default 2^bits)");
  cmd->add_option("--seed", c.seed, "Seed for generators and rate coding");
  cmd->add_option("--out", c.out, "Output file");
  cmd->add_option("--format", c.format, "json, csv or table");
  if (with_accuracy) {
    cmd->add_option("--accuracy", c.accuracy,
                    "Accuracy (%) used as FOM numerator: one value or encoder=value pairs");
  }
}

void add_features(CLI::App* cmd, FeatureOptions& f) {
  cmd->add_flag("--sb", f.sb, "Enable sparsity boosting");
  cmd->add_option("--sgs-threshold", f.sgs_threshold, "Enable skipping with this threshold");
  cmd->add_option("--dt-delay", f.dt_delay, "Delayed-thresholding interval in steps");
  cmd->add_flag("--tsmle", f.tsmle, "Enable time-shrinking multi-level encoding");
  cmd->add_option("--tsmle-window", f.tsmle_window, "Steps compressed per multi-level slot window");
  cmd->add_option("--levels", f.levels, "Multi-level spike levels L");
  cmd->add_flag("--slcs", f.slcs, "Enable spike-level clock skipping");
  cmd->add_option("--pe-rows", f.pe_rows, "PE array rows (output channels in parallel)");
  cmd->add_option("--pe-cols", f.pe_cols, "PE array columns (synapses in parallel)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spike-train codec and accelerator counter model"};
  app.require_subcommand(1);

  EncodeOptions encode;
  auto* enc = app.add_subcommand("encode", "Encode values and report the spike ratio");
  add_common(enc, encode.common, true);
  enc->add_option("--encoder", encode.encoder, "etg, etg+sb, rate, ttfs or phase");
  enc->add_option("--values", encode.values, "Comma-separated values");
  enc->add_option("--input", encode.input, "Tensor descriptor to encode");

  RunOptions run;
  auto* runc = app.add_subcommand("run", "Run a network and compare with the integer oracle");
  add_common(runc, run.common, true);
  run.common.format = "json";
  runc->add_option("--manifest", run.manifest, "Network manifest")->required();
  runc->add_option("--input", run.input, "Input tensor descriptor")->required();
  add_features(runc, run.features);

  CompareOptions compare;
  auto* cmp = app.add_subcommand("compare", "Spike ratio and FOM of every encoder");
  add_common(cmp, compare.common, true);
  cmp->add_option("--input", compare.input, "Tensor descriptor (default: synthetic)");
  cmp->add_option("--shape", compare.shape, "Synthetic shape C,H,W");
  cmp->add_option("--sigma", compare.sigma, "Synthetic relative sigma");
  cmp->add_option("--encoders", compare.encoders, "Comma-separated encoders");
  cmp->add_option("--spike-ratio", compare.spike_ratio_percent,
                  "Spike ratio in percent; prints the FOM for --accuracy and exits");

  SweepOptions sweep;
  auto* swp = app.add_subcommand("sweep", "Evaluate a parameter grid, one CSV row per point");
  add_common(swp, sweep.common, true);
  sweep.common.format = "csv";
  swp->add_option("--manifest", sweep.manifest, "Network manifest (default: synthetic conv layer)");
  swp->add_option("--input", sweep.input, "Input tensor descriptor");
  swp->add_option("--grid", sweep.grid, "key=v1,v2,... (repeatable)");
  swp->add_option("--jobs", sweep.jobs, "Worker threads (0: all cores)");
  add_features(swp, sweep.features);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate a synthetic tensor or random network");
  add_common(g, gen.common, false);
  g->add_option("--kind", gen.kind, "tensor or network");
  g->add_option("--shape", gen.shape, "Tensor shape C,H,W");
  g->add_option("--sigma", gen.sigma, "Relative sigma of the half-normal activations");
  g->add_option("--layers", gen.layers, "Network depth");
  g->add_option("--max-channels", gen.max_channels, "Largest channel count");
  g->add_option("--max-spatial", gen.max_spatial, "Largest input height/width");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*enc) return cmd_encode(encode, std::cout);
    if (*runc) return cmd_run(run, std::cout);
    if (*cmp) return cmd_compare(compare, std::cout);
    if (*swp) return cmd_sweep(sweep, std::cout);
    if (*g) return cmd_gen(gen, std::cout);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
