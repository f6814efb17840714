// Copyright 2026 The hetgame Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// hetgame: run scenarios, presets and the oracle suite from the shell.
//
//   hetgame run --config scenario.cfg --out out/ [--override key=value ...]
//   hetgame preset fig7 --out out/ [--seeds 50] [--jobs 4] [--large-scale]
//   hetgame verify --seed 42 --k 3 --m 2
//   hetgame report out/trace.csv [--v-bits 32 --tau 1 --t-data 900]
//
// Exit status: 0 success, 1 a verification failed, 2 usage or I/O error.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetgame/config.hpp"
#include "hetgame/experiments.hpp"
#include "hetgame/oracles/verify.hpp"
#include "hetgame/sim.hpp"
#include "hetgame/trace.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_u64(const std::string& text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError("not a non-negative integer: '" + text + "'");
  return v;
}

// "50" means seeds 1..50; "3,7,9" and "10-19" list them explicitly.
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  if (text.find_first_of(",-") == std::string::npos) return hetgame::default_seeds(parse_u64(text));
  std::vector<std::uint64_t> seeds;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      seeds.push_back(parse_u64(item));
      continue;
    }
    const auto lo = parse_u64(item.substr(0, dash));
    const auto hi = parse_u64(item.substr(dash + 1));
    if (hi < lo) throw UsageError("empty seed range '" + item + "'");
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  if (seeds.empty()) throw UsageError("no seeds given");
  return seeds;
}

void apply_overrides(hetgame::ScenarioConfig& config, const std::vector<std::string>& overrides) {
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--override expects key=value, got '" + kv + "'");
    hetgame::apply_config_value(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
  out << '\n';
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

struct RunArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool cf = false;
};

int cmd_run(const RunArgs& a) {
  hetgame::ScenarioConfig config;
  if (!a.config_path.empty()) config = hetgame::load_config(a.config_path);
  apply_overrides(config, a.overrides);
  if (a.seed_given) config.seed = a.seed;
  config.validate();

  fs::create_directories(a.out_dir);
  const fs::path trace_path = fs::path(a.out_dir) / "trace.csv";
  auto trace = open_out(trace_path);
  hetgame::RunOptions opts;
  opts.trace = &trace;
  opts.run_id = std::to_string(config.seed);
  auto outcome = a.cf ? hetgame::run_cf_baseline(config, opts) : hetgame::run_hierarchical(config, opts);
  trace.close();
  outcome.trace_path = trace_path.string();

  auto summary = open_out(fs::path(a.out_dir) / "summary.csv");
  write_row(summary, hetgame::summary_columns());
  write_row(summary, hetgame::summary_values(outcome, opts.run_id, a.cf ? "CF" : "OCF"));

  std::cout << "converged=" << (outcome.converged ? "true" : "false")
            << " outer_iterations=" << outcome.outer_iterations
            << " mco_payoff=" << hetgame::format_number(outcome.mco_payoff)
            << " uu_payoff_sum=" << hetgame::format_number(outcome.uu_payoff_sum())
            << " status=" << hetgame::to_string(outcome.final_status) << '\n'
            << "trace: " << trace_path.string() << '\n';
  return kExitOk;
}

struct PresetArgs {
  std::string name;
  std::string out_dir = "out";
  std::string seeds = "50";
  std::size_t jobs = 0;
  bool large_scale = false;
  bool traces = false;
};

int cmd_preset(const PresetArgs& a) {
  const auto seeds = parse_seeds(a.seeds);
  const std::size_t jobs = a.jobs == 0 ? hetgame::default_jobs() : a.jobs;
  const auto spec = hetgame::preset_spec(a.name, a.large_scale);  // rejects unknown names early
  const auto result = hetgame::run_preset(spec.preset_name, a.out_dir, seeds, jobs, a.traces, a.large_scale);
  std::cout << "wrote " << (fs::path(a.out_dir) / (result.spec.preset_name + "_summary.csv")).string() << " ("
            << result.runs.size() << " runs)\n";
  return kExitOk;
}

struct VerifyArgs {
  std::uint64_t seed = 1;
  std::size_t k = 3;
  std::size_t m = 2;
  std::string config_path;
  std::vector<std::string> overrides;
};

int cmd_verify(const VerifyArgs& a) {
  hetgame::VerifyOptions opts;
  if (!a.config_path.empty()) opts.base = hetgame::load_config(a.config_path);
  apply_overrides(opts.base, a.overrides);
  opts.seed = a.seed;
  opts.num_uus = a.k;
  opts.num_subbands = a.m;
  bool all = true;
  for (const auto& r : hetgame::run_verification(opts)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    all = all && r.passed;
  }
  return all ? kExitOk : kExitFailed;
}

struct ReportArgs {
  std::string trace_path;
  std::string summary_path;
  double v_bits = 32.0;
  double tau = 1.0;
  double t_data = 900.0;
};

// Outer iterations recounted from the trace's price rows.
std::size_t trace_outer_iterations(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read trace " + path.string());
  std::string line;
  if (!std::getline(in, line) || split_csv(line) != hetgame::trace_columns()) {
    throw std::runtime_error(path.string() + " is not a trace file");
  }
  std::size_t rows = 0;
  std::size_t last = 0;
  while (std::getline(in, line)) {
    const auto cells = split_csv(line);
    if (cells.size() < 3 || cells[1] != "price") continue;
    last = std::max<std::size_t>(last, parse_u64(cells[2]));
    ++rows;
  }
  return rows == 0 ? 0 : last + 1;
}

int cmd_report(const ReportArgs& a) {
  const fs::path trace = a.trace_path;
  const fs::path summary = a.summary_path.empty() ? trace.parent_path() / "summary.csv" : fs::path(a.summary_path);
  std::ifstream in(summary);
  if (!in) throw std::runtime_error("cannot read run summary " + summary.string());
  std::string header, values;
  std::getline(in, header);
  std::getline(in, values);
  const auto names = split_csv(header);
  const auto cells = split_csv(values);
  if (names.size() != cells.size()) throw std::runtime_error(summary.string() + " is malformed");
  std::map<std::string, std::string> row;
  for (std::size_t i = 0; i < names.size(); ++i) row[names[i]] = cells[i];
  auto field = [&](const std::string& key) -> std::size_t {
    auto it = row.find(key);
    if (it == row.end()) throw std::runtime_error(summary.string() + " lacks column " + key);
    return parse_u64(it->second);
  };

  hetgame::OverheadInputs inputs;
  inputs.num_uus = field("num_uus");
  inputs.num_subbands = field("num_subbands");
  inputs.outer_iterations = field("outer_iterations");
  inputs.messages_total = field("messages_total");
  inputs.formations = field("formations");
  inputs.max_formation_messages = field("max_formation_messages");
  inputs.max_round_messages = field("max_round_messages");

  const std::size_t recounted = trace_outer_iterations(trace);
  if (recounted != inputs.outer_iterations + 1 && recounted != inputs.outer_iterations) {
    throw std::runtime_error("trace and summary disagree on outer iterations (" + std::to_string(recounted) +
                             " vs " + std::to_string(inputs.outer_iterations) + ")");
  }
  const auto r = hetgame::overhead_report(inputs, a.v_bits, a.tau, a.t_data);
  std::cout << "control_bits," << hetgame::format_number(r.control_bits) << '\n'
            << "control_bits_total," << hetgame::format_number(r.control_bits_total) << '\n'
            << "worst_case_bits," << hetgame::format_number(r.worst_case_bits) << '\n'
            << "time_overhead_paper," << hetgame::format_number(r.time_overhead_paper) << '\n'
            << "time_overhead_measured," << hetgame::format_number(r.time_overhead_measured) << '\n'
            << "complexity_ops," << r.complexity_ops << '\n'
            << "complexity_bound," << r.complexity_bound << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical spectrum-sharing game simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run one scenario and write trace.csv and summary.csv");
  run->add_option("--config", run_args.config_path, "key=value config file");
  run->add_option("--out", run_args.out_dir, "Output directory");
  run->add_option("--override", run_args.overrides, "key=value, repeatable")->allow_extra_args(false);
  run->add_option("--seed", run_args.seed, "Channel seed")->each([&](const std::string&) { run_args.seed_given = true; });
  run->add_flag("--cf", run_args.cf, "Non-overlapping baseline (one sub-band per UU)");

  PresetArgs preset_args;
  auto* preset = app.add_subcommand("preset", "Run a named figure preset");
  preset->add_option("name", preset_args.name, "Preset name or figN alias")->required();
  preset->add_option("--out", preset_args.out_dir, "Output directory");
  preset->add_option("--seeds", preset_args.seeds, "Count (1..n), list a,b,c or range a-b");
  preset->add_option("--jobs", preset_args.jobs, "Concurrent runs (default: all cores)");
  preset->add_flag("--large-scale", preset_args.large_scale, "K=64, M=128 variants");
  preset->add_flag("--traces", preset_args.traces, "Write per-run trace files");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run the brute-force oracle suite at small scale");
  verify->add_option("--seed", verify_args.seed, "Channel seed");
  verify->add_option("--k", verify_args.k, "UUs (<= 5)");
  verify->add_option("--m", verify_args.m, "Sub-bands (<= 4)");
  verify->add_option("--config", verify_args.config_path, "key=value config file");
  verify->add_option("--override", verify_args.overrides, "key=value, repeatable")->allow_extra_args(false);

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Overhead report for a finished run");
  report->add_option("trace", report_args.trace_path, "trace.csv written by `run`")->required();
  report->add_option("--summary", report_args.summary_path, "Run summary (default: summary.csv next to the trace)");
  report->add_option("--v-bits", report_args.v_bits, "Control packet size in bits");
  report->add_option("--tau", report_args.tau, "Time slot duration");
  report->add_option("--t-data", report_args.t_data, "Data transmission time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*preset) return cmd_preset(preset_args);
    if (*verify) return cmd_verify(verify_args);
    if (*report) return cmd_report(report_args);
  } catch (const std::exception& e) {
    std::cerr << "hetgame: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
