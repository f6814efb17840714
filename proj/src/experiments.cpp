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

#include "hetgame/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hetgame/stats.hpp"
#include "hetgame/trace.hpp"

namespace hetgame {

namespace {

struct PresetEntry {
  const char* name;
  const char* alias;
};

constexpr PresetEntry kPresets[] = {
    {"fig4_convergence", "fig4"},    {"fig5_Qbar_speed", "fig5"},         {"fig6_payoff_vs_Q", "fig6"},
    {"fig7_price_vs_Q", "fig7"},     {"fig8_active_uus", "fig8"},         {"fig9_num_coalitions", "fig9"},
    {"fig10_avg_memberships", "fig10"}, {"fig11_ocf_vs_cf", "fig11"},
};

Arm q_arm(double q) {
  const std::string v = format_number(q);
  return {"Qbar=" + v, {{"interference_cap", v}}, false};
}

std::string swept_text(double v) { return format_number(v); }

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& p : kPresets) out.emplace_back(p.name);
    return out;
  }();
  return names;
}

std::vector<std::uint64_t> default_seeds(std::size_t n) {
  std::vector<std::uint64_t> seeds(n);
  for (std::size_t i = 0; i < n; ++i) seeds[i] = i + 1;
  return seeds;
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {
      "outer_iterations", "mean_price",     "mco_payoff",      "uu_payoff_sum", "active_uus",
      "num_coalitions",   "avg_memberships", "converged",      "max_interference", "messages_total"};
  return names;
}

double metric_value(const EquilibriumOutcome& o, const std::string& metric) {
  if (metric == "outer_iterations") return static_cast<double>(o.outer_iterations);
  if (metric == "mean_price") return o.mean_price();
  if (metric == "mco_payoff") return o.mco_payoff;
  if (metric == "uu_payoff_sum") return o.uu_payoff_sum();
  if (metric == "active_uus") return static_cast<double>(o.structure.active_uus());
  if (metric == "num_coalitions") return static_cast<double>(o.structure.num_coalitions());
  if (metric == "avg_memberships") return o.structure.average_memberships();
  if (metric == "converged") return o.converged ? 1.0 : 0.0;
  if (metric == "max_interference") {
    return o.interference.empty() ? 0.0 : *std::max_element(o.interference.begin(), o.interference.end());
  }
  if (metric == "messages_total") return static_cast<double>(o.messages_total);
  throw std::invalid_argument("unknown metric: " + metric);
}

void SweepSpec::validate() const {
  if (swept_values.empty()) throw std::invalid_argument(preset_name + ": empty sweep");
  for (std::size_t i = 1; i < swept_values.size(); ++i) {
    if (!(swept_values[i] > swept_values[i - 1])) {
      throw std::invalid_argument(preset_name + ": swept values must be strictly increasing");
    }
  }
  if (seeds.empty()) throw std::invalid_argument(preset_name + ": no seeds");
  if (arms.empty()) throw std::invalid_argument(preset_name + ": no arms");
  for (const auto& m : metrics) metric_value(EquilibriumOutcome{}, m);
  ScenarioConfig probe = base;
  apply_config_value(probe, swept_name, swept_text(swept_values.front()));
  for (const auto& arm : arms) {
    for (const auto& [key, value] : arm.overrides) apply_config_value(probe, key, value);
  }
}

SweepSpec preset_spec(const std::string& requested, bool large_scale) {
  std::string name;
  for (const auto& p : kPresets) {
    if (requested == p.name || requested == p.alias) name = p.name;
  }
  if (name.empty()) {
    std::string msg = "unknown preset '" + requested + "'; valid presets:";
    for (const auto& p : kPresets) msg += std::string(" ") + p.name;
    throw std::invalid_argument(msg);
  }

  SweepSpec s;
  s.preset_name = name;
  s.seeds = default_seeds();
  s.base.num_uus = large_scale ? 64 : 8;
  s.base.num_subbands = large_scale ? 128 : 16;
  s.base.power_cap = 100.0;
  s.base.interference_cap = 10.0;
  s.arms = {Arm{}};
  const std::vector<double> m_sweep =
      large_scale ? std::vector<double>{16, 32, 64, 128} : std::vector<double>{2, 4, 8, 16};

  if (name == "fig4_convergence") {
    s.base.num_subbands = 8;
    s.base.power_cap = 50.0;
    s.swept_name = "interference_cap";
    s.swept_values = {2.0};
    s.metrics = {"outer_iterations", "mean_price", "converged"};
    s.traces_by_default = true;
  } else if (name == "fig5_Qbar_speed") {
    s.swept_name = "interference_cap";
    s.swept_values = {1, 2, 5, 10, 20, 50};
    s.metrics = {"outer_iterations", "mean_price"};
  } else if (name == "fig6_payoff_vs_Q") {
    s.swept_name = "interference_cap";
    s.swept_values = {1, 2, 5, 10, 20, 50};
    s.metrics = {"mco_payoff", "uu_payoff_sum"};
  } else if (name == "fig7_price_vs_Q") {
    s.swept_name = "interference_cap";
    s.swept_values = {10, 50};
    s.metrics = {"mean_price"};
  } else if (name == "fig8_active_uus" || name == "fig9_num_coalitions" || name == "fig10_avg_memberships") {
    s.swept_name = "num_subbands";
    s.swept_values = m_sweep;
    s.arms = {q_arm(10), q_arm(50)};
    s.metrics = {name == "fig8_active_uus"       ? "active_uus"
                 : name == "fig9_num_coalitions" ? "num_coalitions"
                                                 : "avg_memberships",
                 "mean_price"};
  } else if (name == "fig11_ocf_vs_cf") {
    s.swept_name = "power_cap";
    s.swept_values = {10, 25, 50, 100};
    s.arms = {Arm{"OCF", {}, false}, Arm{"CF", {}, true}};
    s.metrics = {"uu_payoff_sum", "avg_memberships"};
  }
  s.validate();
  return s;
}

std::shared_ptr<const EquilibriumOutcome> RunCache::find(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = runs_.find(key);
  return it == runs_.end() ? nullptr : it->second;
}

void RunCache::store(const std::string& key, std::shared_ptr<const EquilibriumOutcome> outcome) {
  std::lock_guard lock(mutex_);
  runs_.emplace(key, std::move(outcome));
}

std::size_t RunCache::size() const {
  std::lock_guard lock(mutex_);
  return runs_.size();
}

ScenarioConfig cell_config(const SweepSpec& spec, const Arm& arm, double swept_value, std::uint64_t seed) {
  ScenarioConfig c = spec.base;
  apply_config_value(c, spec.swept_name, swept_text(swept_value));
  for (const auto& [key, value] : arm.overrides) apply_config_value(c, key, value);
  c.seed = seed;
  c.validate();
  return c;
}

std::vector<double> PresetResult::values(const std::string& metric, double swept_value,
                                         const std::string& arm) const {
  std::vector<double> out;
  for (const auto& r : runs) {
    if (r.arm == arm && r.swept_value == swept_value) out.push_back(metric_value(r.outcome, metric));
  }
  return out;
}

namespace {

std::string trace_file_name(const Arm& arm, const std::string& swept_name, double swept_value, std::uint64_t seed) {
  std::string name = "trace";
  if (!arm.name.empty()) {
    std::string a = arm.name;
    std::replace(a.begin(), a.end(), '=', '-');
    name += "_" + a;
  }
  name += "_" + swept_name + "-" + swept_text(swept_value) + "_seed" + std::to_string(seed) + ".csv";
  return name;
}

}  // namespace

PresetResult run_sweep(const SweepSpec& spec, const ExperimentOptions& options) {
  spec.validate();
  PresetResult result;
  result.spec = spec;

  struct Cell {
    const Arm* arm;
    double value;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (const auto& arm : spec.arms) {
    for (double v : spec.swept_values) {
      for (auto seed : spec.seeds) cells.push_back({&arm, v, seed});
    }
  }
  result.runs.resize(cells.size());

  if (!options.trace_dir.empty()) std::filesystem::create_directories(options.trace_dir);

  auto run_cell = [&](std::size_t i) {
    const Cell& cell = cells[i];
    RunRecord& rec = result.runs[i];
    rec.arm = cell.arm->name;
    rec.swept_value = cell.value;
    rec.seed = cell.seed;
    rec.config = cell_config(spec, *cell.arm, cell.value, cell.seed);

    RunOptions ro;
    ro.single_subband = cell.arm->cf_baseline;
    ro.run_id = spec.preset_name + "/" + (cell.arm->name.empty() ? "" : cell.arm->name + "/") + spec.swept_name +
                "=" + swept_text(cell.value) + "/seed=" + std::to_string(cell.seed);

    if (!options.trace_dir.empty()) {
      const auto path = options.trace_dir / trace_file_name(*cell.arm, spec.swept_name, cell.value, cell.seed);
      std::ofstream trace(path, std::ios::binary);
      if (!trace) throw std::runtime_error("cannot write trace file: " + path.string());
      ro.trace = &trace;
      rec.outcome = run_hierarchical(rec.config, ro);
      rec.outcome.trace_path = path.string();
      return;
    }
    const std::string key = format_config(rec.config) + (ro.single_subband ? "arm=cf\n" : "arm=ocf\n");
    if (options.cache) {
      if (auto hit = options.cache->find(key)) {
        rec.outcome = *hit;
        return;
      }
    }
    rec.outcome = run_hierarchical(rec.config, ro);
    if (options.cache) options.cache->store(key, std::make_shared<const EquilibriumOutcome>(rec.outcome));
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, cells.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
        } catch (...) {
          errors[w] = std::current_exception();
          next = cells.size();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  result.summary = summarize(spec, result.runs);
  return result;
}

std::vector<SummaryRow> summarize(const SweepSpec& spec, const std::vector<RunRecord>& runs) {
  std::vector<SummaryRow> rows;
  const bool multi_arm = spec.arms.size() > 1;
  for (double v : spec.swept_values) {
    for (const auto& arm : spec.arms) {
      for (const auto& metric : spec.metrics) {
        std::vector<double> xs;
        for (const auto& r : runs) {
          if (r.arm == arm.name && r.swept_value == v) xs.push_back(metric_value(r.outcome, metric));
        }
        SummaryRow row;
        row.preset = spec.preset_name;
        row.swept_name = spec.swept_name;
        row.swept_value = v;
        row.seed_count = xs.size();
        row.metric_name = multi_arm ? metric + "@" + arm.name : metric;
        row.mean = mean(xs);
        row.stderr_ = standard_error(xs);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "preset,swept_name,swept_value,seed_count,metric_name,mean,stderr\n";
  for (const auto& r : rows) {
    out << r.preset << ',' << r.swept_name << ',' << format_number(r.swept_value) << ',' << r.seed_count << ','
        << r.metric_name << ',' << format_number(r.mean) << ',' << format_number(r.stderr_) << '\n';
  }
}

void write_runs_csv(std::ostream& out, const PresetResult& result) {
  const auto cols = summary_columns();
  out << "preset,swept_name,swept_value";
  for (const auto& c : cols) out << ',' << c;
  out << '\n';
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    const auto& r = result.runs[i];
    out << result.spec.preset_name << ',' << result.spec.swept_name << ',' << format_number(r.swept_value);
    for (const auto& v : summary_values(r.outcome, std::to_string(i), r.arm)) out << ',' << v;
    out << '\n';
  }
}

PresetResult run_preset(const std::string& name, const std::filesystem::path& out_dir,
                        const std::vector<std::uint64_t>& seeds, std::size_t jobs, bool traces, bool large_scale) {
  SweepSpec spec = preset_spec(name, large_scale);
  if (!seeds.empty()) spec.seeds = seeds;
  std::filesystem::create_directories(out_dir);
  ExperimentOptions opts;
  opts.jobs = jobs;
  if (traces) opts.trace_dir = out_dir / spec.preset_name;
  PresetResult result = run_sweep(spec, opts);

  const auto summary_path = out_dir / (spec.preset_name + "_summary.csv");
  std::ofstream summary(summary_path, std::ios::binary);
  if (!summary) throw std::runtime_error("cannot write " + summary_path.string());
  write_summary_csv(summary, result.summary);

  const auto runs_path = out_dir / (spec.preset_name + "_runs.csv");
  std::ofstream runs(runs_path, std::ios::binary);
  if (!runs) throw std::runtime_error("cannot write " + runs_path.string());
  write_runs_csv(runs, result);
  return result;
}

std::size_t default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace hetgame
