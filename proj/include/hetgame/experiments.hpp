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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hetgame/config.hpp"
#include "hetgame/sim.hpp"

namespace hetgame {

/// One compared variant of a sweep, e.g. "Qbar=10" or "CF".
struct Arm {
  std::string name;  // empty for single-arm presets
  std::vector<std::pair<std::string, std::string>> overrides;
  bool cf_baseline = false;
};

struct SweepSpec {
  std::string preset_name;
  ScenarioConfig base;
  std::string swept_name;  // a config key
  std::vector<double> swept_values;  // strictly increasing
  std::vector<Arm> arms;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> metrics;
  bool traces_by_default = false;

  /// Throws std::invalid_argument on an empty or non-increasing sweep, no
  /// seeds or arms, or an unknown metric / config key.
  void validate() const;
};

/// Preset names in display order.
const std::vector<std::string>& preset_names();

/// Desk-scale presets keep K <= 16, M <= 32. `large_scale` switches the
/// sweeps to K = 64, M = 128 (greedy subset selection). Accepts the short
/// alias "figN" for each preset. Unknown names throw std::invalid_argument
/// listing the valid ones.
SweepSpec preset_spec(const std::string& name, bool large_scale = false);

/// Seeds 1..n.
std::vector<std::uint64_t> default_seeds(std::size_t n = 50);

/// Metrics a summary row can carry.
const std::vector<std::string>& metric_names();
double metric_value(const EquilibriumOutcome& outcome, const std::string& metric);

struct RunRecord {
  std::string arm;
  double swept_value = 0.0;
  std::uint64_t seed = 0;
  ScenarioConfig config;
  EquilibriumOutcome outcome;
};

struct SummaryRow {
  std::string preset;
  std::string swept_name;
  double swept_value = 0.0;
  std::size_t seed_count = 0;
  std::string metric_name;  // metric, suffixed with "@arm" for multi-arm presets
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Memo of finished runs shared across sweeps; thread-safe.
class RunCache {
 public:
  std::shared_ptr<const EquilibriumOutcome> find(const std::string& key) const;
  void store(const std::string& key, std::shared_ptr<const EquilibriumOutcome> outcome);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const EquilibriumOutcome>> runs_;
};

struct ExperimentOptions {
  std::size_t jobs = 1;
  std::filesystem::path trace_dir;  // empty: no trace files
  RunCache* cache = nullptr;        // runs with traces bypass the cache
};

struct PresetResult {
  SweepSpec spec;
  std::vector<RunRecord> runs;  // arm-major, then swept value, then seed
  std::vector<SummaryRow> summary;

  /// Per-seed values of one metric at one sweep point and arm, in seed order.
  std::vector<double> values(const std::string& metric, double swept_value, const std::string& arm = "") const;
};

/// Config for one (arm, swept value, seed) cell of a sweep.
ScenarioConfig cell_config(const SweepSpec& spec, const Arm& arm, double swept_value, std::uint64_t seed);

/// Runs every cell, `jobs` at a time. Results do not depend on `jobs`.
PresetResult run_sweep(const SweepSpec& spec, const ExperimentOptions& options = {});

std::vector<SummaryRow> summarize(const SweepSpec& spec, const std::vector<RunRecord>& runs);

/// preset,swept_name,swept_value,seed_count,metric_name,mean,stderr
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

/// One row per run: run summary columns prefixed by preset and swept value.
void write_runs_csv(std::ostream& out, const PresetResult& result);

/// Runs a preset and writes <out>/<preset>_summary.csv and <out>/<preset>_runs.csv.
/// Trace files go to <out>/<preset>/ when `traces` is set.
PresetResult run_preset(const std::string& name, const std::filesystem::path& out_dir,
                        const std::vector<std::uint64_t>& seeds, std::size_t jobs, bool traces,
                        bool large_scale = false);

/// Number of hardware threads, at least 1.
std::size_t default_jobs();

}  // namespace hetgame
