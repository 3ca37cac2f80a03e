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

#include <algorithm>
#include <future>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "spikeenc/codec.hpp"
#include "spikeenc/manifest.hpp"
#include "spikeenc/metrics.hpp"
#include "spikeenc/network.hpp"

namespace spikeenc::cli {
namespace {

using ojson = nlohmann::ordered_json;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

long long parse_int(const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used, 0);
    if (used != text.size()) throw UsageError("not an integer: '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("not an integer: '" + text + "'");
  }
}

double parse_double(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw UsageError("not a number: '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("not a number: '" + text + "'");
  }
}

bool parse_bool(const std::string& text) {
  if (text == "1" || text == "true" || text == "on") return true;
  if (text == "0" || text == "false" || text == "off") return false;
  throw UsageError("not a boolean: '" + text + "'");
}

Shape parse_shape(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw UsageError("shape must be C,H,W");
  Shape s{static_cast<int>(parse_int(parts[0])), static_cast<int>(parse_int(parts[1])),
          static_cast<int>(parse_int(parts[2]))};
  if (s.channels < 1 || s.height < 1 || s.width < 1) throw UsageError("shape must be positive");
  return s;
}

EncodingParams make_params(const CommonOptions& common) {
  EncodingParams params{common.bits, common.tw.value_or(0)};
  if (!common.tw && common.bits >= 1 && common.bits <= 16) params.window = 1 << common.bits;
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return params;
}

std::uint16_t lfsr_seed(std::uint64_t seed) {
  const auto s = static_cast<std::uint16_t>(seed & 0xffffu);
  if (s == 0) throw UsageError("rate coding needs a seed with nonzero low 16 bits");
  return s;
}

// Single number, or per-encoder "name=value" pairs.
struct AccuracyTable {
  std::optional<double> all;
  std::map<std::string, double> per_encoder;

  std::optional<double> lookup(const std::string& encoder) const {
    if (auto it = per_encoder.find(encoder); it != per_encoder.end()) return it->second;
    return all;
  }
};

AccuracyTable parse_accuracy(const std::optional<std::string>& text) {
  AccuracyTable table;
  if (!text) return table;
  if (text->find('=') == std::string::npos) {
    table.all = parse_double(*text);
    return table;
  }
  for (const std::string& pair : split(*text, ',')) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos) throw UsageError("accuracy pairs must be encoder=value");
    table.per_encoder[pair.substr(0, eq)] = parse_double(pair.substr(eq + 1));
  }
  return table;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw UsageError("unsupported --format '" + format + "'");
}

std::string percent(double ratio) { return format_fixed(ratio * 100.0, 2) + "%"; }

// Spikes of every value under one encoder; rate coding shares one LFSR
// across the values, in order.
struct EncodeTotals {
  std::int64_t spikes = 0;
  std::int64_t values = 0;
  double ratio = 0.0;
};

EncodeTotals encode_all(Encoder encoder, const std::vector<std::int32_t>& values,
                        const EncodingParams& params, std::uint64_t seed,
                        std::vector<SpikeTrain>* trains = nullptr) {
  Lfsr lfsr(encoder == Encoder::kRate ? lfsr_seed(seed) : Lfsr::kDefaultSeed);
  EncodeTotals totals;
  for (std::int32_t v : values) {
    SpikeTrain train = encode(encoder, v, params, lfsr);
    totals.spikes += spike_count(train);
    ++totals.values;
    if (trains) trains->push_back(std::move(train));
  }
  totals.ratio = spike_ratio(totals.spikes, totals.values, params.window);
  return totals;
}

std::vector<std::int32_t> read_values(const std::string& list, const std::string& input) {
  if (!input.empty()) return load_tensor(input).data;
  std::vector<std::int32_t> values;
  for (const std::string& item : split(list, ',')) {
    values.push_back(static_cast<std::int32_t>(parse_int(item)));
  }
  if (values.empty()) throw UsageError("encode needs --values or --input");
  return values;
}

ojson network_config(const NetworkSpec& net) {
  ojson layers = ojson::array();
  for (const LayerSpec& l : net.layers) {
    layers.push_back({{"kind", std::string(to_string(l.kind))},
                      {"in_shape", {l.in_shape.channels, l.in_shape.height, l.in_shape.width}},
                      {"out_shape", {l.out_shape.channels, l.out_shape.height, l.out_shape.width}},
                      {"kernel", {l.kernel_h, l.kernel_w}},
                      {"stride", l.stride},
                      {"padding", l.padding},
                      {"theta", l.theta},
                      {"theta_dt", l.theta_dt},
                      {"dt_delay", l.dt_delay},
                      {"sgs_tau", l.sgs_tau}});
  }
  const ArchConfig& a = net.arch;
  ojson arch = {{"pe_rows", a.pe_rows},
                {"pe_cols", a.pe_cols},
                {"encoder_steps_per_cycle", a.encoder_steps_per_cycle},
                {"sb", a.sb_enabled},
                {"sgs", a.sgs_enabled},
                {"tsmle", a.tsmle_enabled},
                {"slcs", a.slcs_enabled},
                {"tsmle_window", a.tsmle_window},
                {"levels", a.levels}};
  arch["dt_delay"] = a.dt_delay ? ojson(*a.dt_delay) : ojson();
  arch["sgs_tau"] = a.sgs_tau ? ojson(*a.sgs_tau) : ojson();
  ojson j = {{"encoding", {{"bits", net.encoding.bits}, {"window", net.encoding.window}}},
             {"arch", arch},
             {"layers", layers}};
  j["generator_seed"] = net.generator_seed ? ojson(*net.generator_seed) : ojson();
  return j;
}

ArchConfig features_off(ArchConfig arch) {
  arch.sb_enabled = false;
  arch.sgs_enabled = false;
  arch.tsmle_enabled = false;
  arch.slcs_enabled = false;
  return arch;
}

bool oracle_equivalent_config(const NetworkSpec& net) {
  const ArchConfig& a = net.arch;
  if (a.sb_enabled) return false;
  for (const LayerSpec& l : net.layers) {
    if (a.sgs_enabled && a.sgs_tau.value_or(l.sgs_tau) > 0.0) return false;
    if (effective_dt(l, a, net.encoding.window).delay != net.encoding.window) return false;
  }
  return true;
}

struct Evaluation {
  SimReport report;
  std::vector<std::string> violations;
};

// Proposed, conventional and feature-off runs plus the oracle, with the
// invariants that must hold between them.
Evaluation evaluate(const NetworkSpec& net, const Tensor& input, std::optional<double> accuracy) {
  Evaluation ev;
  SimReport& r = ev.report;
  const NetworkResult proposed = run_network(input, net);
  const NetworkResult baseline = run_baseline_network(input, net);
  NetworkSpec plain = net;
  plain.arch = features_off(net.arch);
  const NetworkResult reference = run_network(input, plain);
  const Tensor oracle = oracle_forward(input, net);

  r.counters = proposed.counters;
  r.baseline = baseline.counters;
  r.reference = reference.counters;
  r.agreement = compare_outputs(proposed.output, oracle);
  r.accuracy = accuracy;
  finalize_report(r, net.encoding.window);

  if (oracle_equivalent_config(net) && !r.agreement.exact) {
    ev.violations.push_back("outputs differ from the integer oracle in an exact configuration");
  }
  if (oracle_equivalent_config(plain) && reference.output != baseline.output) {
    ev.violations.push_back("feature-off outputs differ from the conventional schedule");
  }
  if (net.arch.tsmle_enabled && net.arch.slcs_enabled &&
      r.counters.total_cycles > r.baseline.total_cycles) {
    ev.violations.push_back("TS-MLE+SLCS slower than the conventional schedule");
  }
  return ev;
}

std::string run_table(const SimReport& r) {
  std::ostringstream os;
  auto row = [&](const std::string& key, const std::string& value) {
    os << std::left << std::setw(20) << key << value << "\n";
  };
  row("spike_ratio", percent(r.spike_ratio));
  row("speedup", format_fixed(r.speedup, 3) + "x");
  row("fetch_ratio", format_fixed(r.fetch_ratio, 3) + "x");
  row("computation_ratio", format_fixed(r.computation_ratio, 3));
  row("traffic_ratio", format_fixed(r.traffic_ratio, 3));
  row("oracle_exact", r.agreement.exact ? "yes" : "no");
  row("max_deviation", std::to_string(r.agreement.max_deviation));
  row("accuracy_source", r.accuracy_source);
  row("fom", format_fixed(r.fom, 1));
  row("total_cycles", std::to_string(r.counters.total_cycles));
  row("baseline_cycles", std::to_string(r.baseline.total_cycles));
  row("weight_fetches", std::to_string(r.counters.weight_fetches));
  row("accumulate_ops", std::to_string(r.counters.accumulate_ops));
  row("skipped_neurons", std::to_string(r.counters.skipped_neurons));
  return os.str();
}

// Workload for sweeps without a manifest: one 16x16x16 -> 16 3x3 conv layer
// on half-Gaussian activations.
std::pair<NetworkSpec, Tensor> default_workload(const EncodingParams& params, std::uint64_t seed) {
  const Shape in{16, 16, 16};
  Tensor input = gen_synthetic(in, params.bits, kDefaultSyntheticSigma, seed);
  NetworkSpec net;
  net.encoding = params;
  net.generator_seed = seed;
  net.layers.push_back(random_conv_layer(in, 16, 3, 1, 8, input, params, seed + 1));
  return {std::move(net), std::move(input)};
}

struct GridAxis {
  std::string key;
  std::vector<std::string> values;
};

const std::vector<std::string>& grid_keys() {
  static const std::vector<std::string> keys = {
      "dt_delay", "encoder", "sgs_threshold", "tsmle_window", "levels",
      "sb",       "slcs",    "tsmle",         "pe_rows",      "pe_cols"};
  return keys;
}

std::vector<GridAxis> parse_grid(const std::vector<std::string>& specs) {
  std::vector<GridAxis> axes;
  for (const std::string& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw UsageError("grid entries look like key=v1,v2");
    GridAxis axis{spec.substr(0, eq), split(spec.substr(eq + 1), ',')};
    const auto& keys = grid_keys();
    if (std::find(keys.begin(), keys.end(), axis.key) == keys.end()) {
      throw UsageError("unknown grid key '" + axis.key + "'");
    }
    if (axis.values.empty()) throw UsageError("grid key '" + axis.key + "' has no values");
    for (const GridAxis& other : axes) {
      if (other.key == axis.key) throw UsageError("grid key '" + axis.key + "' repeated");
    }
    axes.push_back(std::move(axis));
  }
  if (axes.empty()) throw UsageError("sweep needs at least one --grid entry");
  return axes;
}

void apply_point(const std::string& key, const std::string& value, ArchConfig& arch,
                 std::string& encoder) {
  if (key == "dt_delay") arch.dt_delay = static_cast<int>(parse_int(value));
  else if (key == "encoder") encoder = std::string(to_string(parse_encoder(value)));
  else if (key == "sgs_threshold") {
    arch.sgs_enabled = true;
    arch.sgs_tau = parse_double(value);
  } else if (key == "tsmle_window") arch.tsmle_window = static_cast<int>(parse_int(value));
  else if (key == "levels") arch.levels = static_cast<int>(parse_int(value));
  else if (key == "sb") arch.sb_enabled = parse_bool(value);
  else if (key == "slcs") arch.slcs_enabled = parse_bool(value);
  else if (key == "tsmle") arch.tsmle_enabled = parse_bool(value);
  else if (key == "pe_rows") arch.pe_rows = static_cast<int>(parse_int(value));
  else if (key == "pe_cols") arch.pe_cols = static_cast<int>(parse_int(value));
}

const std::vector<std::string>& sweep_metric_columns() {
  static const std::vector<std::string> cols = {
      "encoder_spike_ratio", "spike_ratio",    "speedup",        "fetch_ratio",
      "computation_ratio",   "traffic_ratio",  "total_cycles",   "baseline_cycles",
      "pe_cycles",           "encoder_cycles", "weight_fetches", "input_spikes",
      "output_spikes",       "skipped_neurons", "accumulate_ops", "oracle_exact",
      "max_deviation",       "fom"};
  return cols;
}

}  // namespace

void FeatureOptions::apply(ArchConfig& arch) const {
  if (sb) arch.sb_enabled = true;
  if (sgs_threshold) {
    arch.sgs_enabled = true;
    arch.sgs_tau = *sgs_threshold;
  }
  if (dt_delay) arch.dt_delay = *dt_delay;
  if (tsmle) arch.tsmle_enabled = true;
  if (tsmle_window) arch.tsmle_window = *tsmle_window;
  if (levels) arch.levels = *levels;
  if (slcs) arch.slcs_enabled = true;
  if (pe_rows) arch.pe_rows = *pe_rows;
  if (pe_cols) arch.pe_cols = *pe_cols;
}

int cmd_encode(const EncodeOptions& opts, std::ostream& out) {
  check_format(opts.common.format, {"table", "json"});
  const EncodingParams params = make_params(opts.common);
  const Encoder encoder = [&] {
    try {
      return parse_encoder(opts.encoder);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  if ((encoder == Encoder::kEtg || encoder == Encoder::kEtgSb) && !params.eigen_window()) {
    throw UsageError("eigen-train encoders need --tw equal to 2^bits");
  }
  const std::vector<std::int32_t> values = read_values(opts.values, opts.input);
  std::vector<SpikeTrain> trains;
  const EncodeTotals totals = encode_all(encoder, values, params, opts.common.seed, &trains);
  const AccuracyTable accuracy = parse_accuracy(opts.common.accuracy);
  const std::optional<double> acc = accuracy.lookup(opts.encoder);

  std::ostringstream dump;
  if (opts.common.format == "json") {
    ojson j = {{"encoder", opts.encoder},
               {"bits", params.bits},
               {"window", params.window},
               {"seed", opts.common.seed},
               {"values", values}};
    ojson rows = ojson::array();
    for (const SpikeTrain& t : trains) {
      std::string bits;
      for (auto b : t.bits()) bits.push_back(b ? '1' : '0');
      rows.push_back(bits);
    }
    j["trains"] = rows;
    j["spikes"] = totals.spikes;
    j["spike_ratio"] = totals.ratio;
    if (acc && totals.ratio > 0.0) j["fom"] = figure_of_merit(*acc, totals.ratio);
    dump << j.dump(2) << "\n";
  } else {
    dump << "# encoder=" << opts.encoder << " bits=" << params.bits << " tw=" << params.window
         << " seed=" << opts.common.seed << "\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
      dump << values[i] << " ";
      for (auto b : trains[i].bits()) dump << (b ? '1' : '0');
      dump << "\n";
    }
    dump << "spike_ratio " << format_fixed(totals.ratio, 6) << "\n";
  }
  if (!opts.common.out.empty()) write_file(opts.common.out, dump.str());

  out << "encoder " << opts.encoder << ": " << totals.spikes << " spikes over " << totals.values
      << " values, spike ratio " << percent(totals.ratio);
  if (acc && totals.ratio > 0.0) out << ", FOM " << format_fixed(figure_of_merit(*acc, totals.ratio), 1);
  out << "\n";
  return kOk;
}

int cmd_run(const RunOptions& opts, std::ostream& out) {
  check_format(opts.common.format, {"table", "json"});
  if (opts.manifest.empty() || opts.input.empty()) {
    throw UsageError("run needs --manifest and --input");
  }
  NetworkSpec net = load_network(opts.manifest);
  opts.features.apply(net.arch);
  try {
    net.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Tensor input = load_tensor(opts.input);
  const AccuracyTable accuracy = parse_accuracy(opts.common.accuracy);
  Evaluation ev = evaluate(net, input, accuracy.all);
  ev.report.config = network_config(net);
  ev.report.config["input_shape"] = {input.shape.channels, input.shape.height, input.shape.width};
  if (net.generator_seed) ev.report.seeds.push_back(*net.generator_seed);
  ev.report.seeds.push_back(opts.common.seed);

  const ojson j = to_json(ev.report);
  if (!opts.common.out.empty()) write_file(opts.common.out, j.dump(2) + "\n");
  if (opts.common.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    out << run_table(ev.report);
  }
  for (const std::string& v : ev.violations) out << "invariant violated: " << v << "\n";
  return ev.violations.empty() ? kOk : kInvariant;
}

int cmd_compare(const CompareOptions& opts, std::ostream& out) {
  check_format(opts.common.format, {"table", "json", "csv"});
  const AccuracyTable accuracy = parse_accuracy(opts.common.accuracy);

  // Table mode: FOM from a supplied spike ratio.
  if (opts.spike_ratio_percent) {
    if (!accuracy.all) throw UsageError("--spike-ratio needs a single --accuracy value");
    const double ratio = *opts.spike_ratio_percent / 100.0;
    if (ratio <= 0.0) throw UsageError("--spike-ratio must be positive");
    out << "FOM " << format_fixed(figure_of_merit(*accuracy.all, ratio), 1) << "\n";
    return kOk;
  }

  const EncodingParams params = make_params(opts.common);
  const Tensor tensor =
      opts.input.empty()
          ? gen_synthetic(parse_shape(opts.shape), params.bits,
                          opts.sigma < 0.0 ? kDefaultSyntheticSigma : opts.sigma, opts.common.seed)
          : load_tensor(opts.input);

  ojson rows = ojson::array();
  std::ostringstream table;
  table << std::left << std::setw(10) << "encoder" << std::setw(14) << "spike_ratio"
        << std::setw(12) << "accuracy" << "fom\n";
  std::ostringstream csv;
  csv << "encoder,spikes,values,spike_ratio,accuracy,fom\n";
  for (const std::string& name : split(opts.encoders, ',')) {
    Encoder encoder;
    try {
      encoder = parse_encoder(name);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if ((encoder == Encoder::kEtg || encoder == Encoder::kEtgSb) && !params.eigen_window()) {
      throw UsageError("eigen-train encoders need --tw equal to 2^bits");
    }
    const EncodeTotals totals = encode_all(encoder, tensor.data, params, opts.common.seed);
    const std::optional<double> acc = accuracy.lookup(name);
    const bool has_fom = acc && totals.ratio > 0.0;
    const double fom = has_fom ? figure_of_merit(*acc, totals.ratio) : 0.0;
    ojson row = {{"encoder", name}, {"spikes", totals.spikes}, {"values", totals.values},
                 {"spike_ratio", totals.ratio}};
    row["accuracy"] = acc ? ojson(*acc) : ojson();
    row["fom"] = has_fom ? ojson(fom) : ojson();
    rows.push_back(row);
    table << std::left << std::setw(10) << name << std::setw(14) << percent(totals.ratio)
          << std::setw(12) << (acc ? format_fixed(*acc, 1) : "-")
          << (has_fom ? format_fixed(fom, 1) : "-") << "\n";
    csv << name << "," << totals.spikes << "," << totals.values << ","
        << format_fixed(totals.ratio, 6) << "," << (acc ? format_fixed(*acc, 2) : "") << ","
        << (has_fom ? format_fixed(fom, 3) : "") << "\n";
  }

  ojson doc = {{"bits", params.bits}, {"window", params.window}, {"seed", opts.common.seed},
               {"shape", {tensor.shape.channels, tensor.shape.height, tensor.shape.width}},
               {"rows", rows}};
  std::string text = table.str();
  if (opts.common.format == "json") text = doc.dump(2) + "\n";
  if (opts.common.format == "csv") text = csv.str();
  if (!opts.common.out.empty()) write_file(opts.common.out, text);
  out << text;
  return kOk;
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out) {
  check_format(opts.common.format, {"csv", "table", "json"});
  const std::vector<GridAxis> axes = parse_grid(opts.grid);
  const EncodingParams params = make_params(opts.common);

  NetworkSpec net;
  Tensor input;
  if (!opts.manifest.empty()) {
    net = load_network(opts.manifest);
    if (opts.input.empty()) throw UsageError("--manifest needs --input");
    input = load_tensor(opts.input);
  } else {
    std::tie(net, input) = default_workload(params, opts.common.seed);
  }
  opts.features.apply(net.arch);
  const AccuracyTable accuracy = parse_accuracy(opts.common.accuracy);

  // Cartesian product, last axis fastest.
  std::vector<std::vector<std::string>> points{{}};
  for (const GridAxis& axis : axes) {
    std::vector<std::vector<std::string>> next;
    for (const auto& prefix : points) {
      for (const std::string& v : axis.values) {
        auto p = prefix;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    }
    points = std::move(next);
  }

  struct PointResult {
    std::vector<std::string> cells;
    std::vector<std::string> violations;
  };
  auto run_point = [&](const std::vector<std::string>& point) {
    NetworkSpec local = net;
    std::string encoder = local.arch.sb_enabled ? "etg+sb" : "etg";
    for (std::size_t i = 0; i < axes.size(); ++i) {
      apply_point(axes[i].key, point[i], local.arch, encoder);
    }
    try {
      local.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    Evaluation ev = evaluate(local, input, accuracy.lookup(encoder));
    const EncodeTotals enc = encode_all(parse_encoder(encoder), input.data, local.encoding,
                                        opts.common.seed);
    const SimReport& r = ev.report;
    PointResult pr;
    pr.cells = point;
    for (std::string v : {format_fixed(enc.ratio, 6), format_fixed(r.spike_ratio, 6),
                          format_fixed(r.speedup, 6), format_fixed(r.fetch_ratio, 6),
                          format_fixed(r.computation_ratio, 6), format_fixed(r.traffic_ratio, 6),
                          std::to_string(r.counters.total_cycles),
                          std::to_string(r.baseline.total_cycles),
                          std::to_string(r.counters.pe_cycles),
                          std::to_string(r.counters.encoder_cycles),
                          std::to_string(r.counters.weight_fetches),
                          std::to_string(r.counters.input_spikes),
                          std::to_string(r.counters.output_spikes),
                          std::to_string(r.counters.skipped_neurons),
                          std::to_string(r.counters.accumulate_ops),
                          std::string(r.agreement.exact ? "1" : "0"),
                          std::to_string(r.agreement.max_deviation), format_fixed(r.fom, 6)}) {
      pr.cells.push_back(std::move(v));
    }
    pr.violations = std::move(ev.violations);
    return pr;
  };

  const unsigned workers =
      opts.jobs > 0 ? static_cast<unsigned>(opts.jobs) : std::max(1u, std::thread::hardware_concurrency());
  std::vector<PointResult> results(points.size());
  for (std::size_t start = 0; start < points.size(); start += workers) {
    std::vector<std::future<PointResult>> batch;
    const std::size_t end = std::min(points.size(), start + workers);
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, run_point, std::cref(points[i])));
    }
    for (std::size_t i = start; i < end; ++i) results[i] = batch[i - start].get();
  }

  std::vector<std::string> header;
  for (const GridAxis& a : axes) header.push_back(a.key);
  for (const std::string& c : sweep_metric_columns()) header.push_back(c);

  std::ostringstream text;
  if (opts.common.format == "json") {
    ojson rows = ojson::array();
    for (const PointResult& pr : results) {
      ojson row;
      for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = pr.cells[i];
      rows.push_back(row);
    }
    ojson doc = {{"config", network_config(net)}, {"seed", opts.common.seed}, {"rows", rows}};
    text << doc.dump(2) << "\n";
  } else {
    const char sep = opts.common.format == "csv" ? ',' : ' ';
    auto emit = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) text << sep;
        text << cells[i];
      }
      text << "\n";
    };
    emit(header);
    for (const PointResult& pr : results) emit(pr.cells);
  }
  if (!opts.common.out.empty()) write_file(opts.common.out, text.str());
  out << text.str();

  bool violated = false;
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (const std::string& v : results[i].violations) {
      out << "invariant violated at row " << i << ": " << v << "\n";
      violated = true;
    }
  }
  return violated ? kInvariant : kOk;
}

int cmd_gen(const GenOptions& opts, std::ostream& out) {
  if (opts.common.out.empty()) throw UsageError("gen needs --out");
  if (opts.kind == "tensor") {
    const EncodingParams params = make_params(opts.common);
    const double sigma = opts.sigma < 0.0 ? kDefaultSyntheticSigma : opts.sigma;
    const Tensor t = gen_synthetic(parse_shape(opts.shape), params.bits, sigma, opts.common.seed);
    save_tensor(t, opts.common.out);
    out << "wrote " << t.data.size() << " values (sigma " << sigma << ", seed " << opts.common.seed
        << ") to " << opts.common.out << "\n";
    return kOk;
  }
  if (opts.kind == "network") {
    RandomNetworkOptions ro;
    ro.layers = opts.layers;
    ro.max_channels = opts.max_channels;
    ro.max_spatial = opts.max_spatial;
    ro.bits = opts.common.bits;
    if (ro.layers < 1 || ro.max_channels < 1 || ro.max_spatial < 2) {
      throw UsageError("network generation needs layers >= 1, channels >= 1, spatial >= 2");
    }
    NetworkSpec net;
    try {
      net = random_network(ro, opts.common.seed);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    save_network(net, opts.common.out);
    const Shape in = net.layers.front().in_shape;
    out << "wrote " << net.layers.size() << "-layer network (input " << in.channels << ","
        << in.height << "," << in.width << ", seed " << opts.common.seed << ") to "
        << opts.common.out << "\n";
    return kOk;
  }
  throw UsageError("unknown --kind '" + opts.kind + "' (tensor or network)");
}

}  // namespace spikeenc::cli
