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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fstream>
#include <optional>
#include <sstream>

#include "hetgame/channel.hpp"
#include "hetgame/config.hpp"
#include "hetgame/experiments.hpp"
#include "hetgame/follower.hpp"
#include "hetgame/leader.hpp"
#include "hetgame/mimo.hpp"
#include "hetgame/ocf.hpp"
#include "hetgame/oracles/verify.hpp"
#include "hetgame/sim.hpp"
#include "hetgame/trace.hpp"

namespace py = pybind11;
using namespace hetgame;

namespace {

py::array_t<double> to_array(const Matrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) v(r, c) = m(r, c);
  }
  return out;
}

Matrix from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  auto v = a.unchecked<2>();
  for (py::ssize_t r = 0; r < a.shape(0); ++r) {
    for (py::ssize_t c = 0; c < a.shape(1); ++c) m(r, c) = v(r, c);
  }
  return m;
}

py::dict summary_row(const SummaryRow& r) {
  py::dict d;
  d["preset"] = r.preset;
  d["swept_name"] = r.swept_name;
  d["swept_value"] = r.swept_value;
  d["seed_count"] = r.seed_count;
  d["metric_name"] = r.metric_name;
  d["mean"] = r.mean;
  d["stderr"] = r.stderr_;
  return d;
}

EquilibriumOutcome run_game(const ScenarioConfig& config, bool cf, bool use_history,
                            const std::optional<std::filesystem::path>& trace_path) {
  RunOptions opts;
  opts.single_subband = cf;
  opts.use_history = use_history;
  std::ofstream trace;
  if (trace_path) {
    trace.open(*trace_path, std::ios::binary);
    if (!trace) throw std::runtime_error("cannot write trace file: " + trace_path->string());
    opts.trace = &trace;
  }
  auto out = run_hierarchical(config, opts);
  if (trace_path) out.trace_path = trace_path->string();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hierarchical spectrum-sharing game: MCO pricing over overlapping UU coalitions.";

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def(py::init([](const py::kwargs& kw) {
        ScenarioConfig c;
        for (auto [k, v] : kw) apply_config_value(c, py::str(k), py::str(v));
        return c;
      }))
      .def_readwrite("num_uus", &ScenarioConfig::num_uus)
      .def_readwrite("num_subbands", &ScenarioConfig::num_subbands)
      .def_readwrite("power_cap", &ScenarioConfig::power_cap)
      .def_readwrite("interference_cap", &ScenarioConfig::interference_cap)
      .def_readwrite("epsilon", &ScenarioConfig::epsilon)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def_readwrite("noise_floor", &ScenarioConfig::noise_floor)
      .def_readwrite("fading_scale", &ScenarioConfig::fading_scale)
      .def_readwrite("max_outer_iters", &ScenarioConfig::max_outer_iters)
      .def_readwrite("max_inner_iters", &ScenarioConfig::max_inner_iters)
      .def_readwrite("subset_exact_threshold", &ScenarioConfig::subset_exact_threshold)
      .def_readwrite("tolerance", &ScenarioConfig::tolerance)
      .def("validate", &ScenarioConfig::validate)
      .def("set", [](ScenarioConfig& c, const std::string& key, const std::string& value) {
        apply_config_value(c, key, value);
      })
      .def("to_text", [](const ScenarioConfig& c) { return format_config(c); })
      .def("__eq__", [](const ScenarioConfig& a, const ScenarioConfig& b) { return a == b; })
      .def("__repr__", [](const ScenarioConfig& c) {
        std::string s = "ScenarioConfig(";
        bool first = true;
        for (const auto& [k, v] : config_fields(c)) {
          s += (first ? "" : ", ") + k + "=" + v;
          first = false;
        }
        return s + ")";
      });

  m.def("config_keys", &config_keys);
  m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
  m.def("load_config", [](const std::filesystem::path& p) { return load_config(p); }, py::arg("path"));

  py::class_<ChannelRealization>(m, "Channel")
      .def_property_readonly("macro_gains", [](const ChannelRealization& r) { return to_array(r.macro_gains); })
      .def_property_readonly("noise", [](const ChannelRealization& r) { return to_array(r.noise); })
      .def("femto_gains", [](const ChannelRealization& r, std::size_t m) { return to_array(r.femto_gains.at(m)); },
           py::arg("subband"))
      .def_property_readonly("num_uus", &ChannelRealization::num_uus)
      .def_property_readonly("num_subbands", &ChannelRealization::num_subbands);
  m.def("generate_channel", [](const ScenarioConfig& c) { return generate_channel(c); }, py::arg("config"));

  m.def("waterfill_power", &waterfill_power, py::arg("lam"), py::arg("mu"), py::arg("h"),
        py::arg("ceiling") = kUnbounded);
  m.def("subband_payoff", &subband_payoff, py::arg("power"), py::arg("mu"), py::arg("lam"), py::arg("h"));
  m.def("gram_eigenvalues",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& g) {
          return gram_eigenvalues(from_array(g));
        },
        py::arg("gain"));
  m.def("payoff_division",
        [](const ChannelRealization& real, std::size_t subband, std::vector<std::size_t> members) {
          Support s;
          s.subband = subband;
          s.members = std::move(members);
          return payoff_division_for(real, s);
        },
        py::arg("channel"), py::arg("subband"), py::arg("members"));
  m.def("start_price", &start_price, py::arg("channel"));
  m.def("exact_price_oracle",
        [](const std::vector<double>& lambda, const std::vector<double>& gain, double cap, double ceiling) {
          return exact_price_oracle(lambda, gain, cap, ceiling);
        },
        py::arg("lam"), py::arg("gain"), py::arg("interference_cap"), py::arg("ceiling") = kUnbounded);

  py::class_<EquilibriumOutcome>(m, "Outcome")
      .def_readonly("config", &EquilibriumOutcome::config)
      .def_readonly("prices", &EquilibriumOutcome::prices)
      .def_property_readonly("power", [](const EquilibriumOutcome& o) { return to_array(o.structure.power); })
      .def_property_readonly("lam", [](const EquilibriumOutcome& o) { return to_array(o.structure.lambda); })
      .def_readonly("uu_payoffs", &EquilibriumOutcome::uu_payoffs)
      .def_readonly("mco_payoff", &EquilibriumOutcome::mco_payoff)
      .def_readonly("interference", &EquilibriumOutcome::interference)
      .def_readonly("start_price", &EquilibriumOutcome::start_price)
      .def_readonly("iteration_bound", &EquilibriumOutcome::iteration_bound)
      .def_readonly("outer_iterations", &EquilibriumOutcome::outer_iterations)
      .def_readonly("formations", &EquilibriumOutcome::formations)
      .def_readonly("prices_terminated", &EquilibriumOutcome::prices_terminated)
      .def_readonly("interference_feasible", &EquilibriumOutcome::interference_feasible)
      .def_readonly("power_feasible", &EquilibriumOutcome::power_feasible)
      .def_readonly("max_unilateral_gain", &EquilibriumOutcome::max_unilateral_gain)
      .def_readonly("converged", &EquilibriumOutcome::converged)
      .def_property_readonly("status", [](const EquilibriumOutcome& o) { return to_string(o.final_status); })
      .def_readonly("messages_total", &EquilibriumOutcome::messages_total)
      .def_readonly("supports_seen", &EquilibriumOutcome::supports_seen)
      .def_readonly("trace_path", &EquilibriumOutcome::trace_path)
      .def_property_readonly("uu_payoff_sum", &EquilibriumOutcome::uu_payoff_sum)
      .def_property_readonly("mean_price", &EquilibriumOutcome::mean_price)
      .def_property_readonly("num_coalitions", [](const EquilibriumOutcome& o) { return o.structure.num_coalitions(); })
      .def_property_readonly("active_uus", [](const EquilibriumOutcome& o) { return o.structure.active_uus(); })
      .def_property_readonly("average_memberships",
                             [](const EquilibriumOutcome& o) { return o.structure.average_memberships(); })
      .def("summary", [](const EquilibriumOutcome& o) {
        py::dict d;
        const auto cols = summary_columns();
        const auto vals = summary_values(o, "0", "");
        for (std::size_t i = 0; i < cols.size(); ++i) d[py::str(cols[i])] = vals[i];
        return d;
      });

  m.def("run", &run_game, py::arg("config"), py::arg("cf") = false, py::arg("use_history") = true,
        py::arg("trace_path") = std::nullopt, py::call_guard<py::gil_scoped_release>(),
        "Runs the hierarchical game; `cf` restricts every UU to one sub-band.");

  m.def("core_check",
        [](const EquilibriumOutcome& o) {
          const auto real = generate_channel(o.config);
          const auto r = core_check(o.structure, o.prices, real, o.config);
          py::dict d;
          d["in_core"] = r.in_core;
          d["coalitions_checked"] = r.coalitions_checked;
          d["grid_points"] = r.grid_points;
          if (r.certificate) {
            py::dict c;
            c["coalition"] = r.certificate->coalition;
            c["subband"] = r.certificate->subband;
            c["power"] = r.certificate->power;
            c["deviation_share"] = r.certificate->deviation_share;
            c["current_share"] = r.certificate->current_share;
            d["certificate"] = c;
          } else {
            d["certificate"] = py::none();
          }
          return d;
        },
        py::arg("outcome"));

  m.def("overhead",
        [](const EquilibriumOutcome& o, double v_bits, double tau, double t_data) {
          const auto r = overhead_report(o, v_bits, tau, t_data);
          py::dict d;
          d["control_bits"] = r.control_bits;
          d["control_bits_total"] = r.control_bits_total;
          d["worst_case_bits"] = r.worst_case_bits;
          d["time_overhead_paper"] = r.time_overhead_paper;
          d["time_overhead_measured"] = r.time_overhead_measured;
          d["complexity_ops"] = r.complexity_ops;
          d["complexity_bound"] = r.complexity_bound;
          return d;
        },
        py::arg("outcome"), py::arg("v_bits") = 32.0, py::arg("tau") = 1.0, py::arg("t_data") = 900.0);

  m.def("preset_names", &preset_names);
  m.def("run_preset",
        [](const std::string& name, const std::filesystem::path& out, std::vector<std::uint64_t> seeds,
           std::size_t jobs, bool traces, bool large_scale) {
          PresetResult r;
          {
            py::gil_scoped_release release;
            r = run_preset(name, out, seeds, jobs, traces, large_scale);
          }
          py::list rows;
          for (const auto& row : r.summary) rows.append(summary_row(row));
          return rows;
        },
        py::arg("name"), py::arg("out_dir"), py::arg("seeds") = std::vector<std::uint64_t>{}, py::arg("jobs") = 1,
        py::arg("traces") = false, py::arg("large_scale") = false,
        "Runs a preset sweep, writes <out_dir>/<preset>_summary.csv and _runs.csv, returns the summary rows.");

  m.def("verify",
        [](std::uint64_t seed, std::size_t k, std::size_t mm) {
          VerifyOptions o;
          o.seed = seed;
          o.num_uus = k;
          o.num_subbands = mm;
          std::vector<std::tuple<std::string, bool, std::string>> out;
          for (const auto& r : run_verification(o)) out.emplace_back(r.name, r.passed, r.detail);
          return out;
        },
        py::arg("seed") = 1, py::arg("k") = 3, py::arg("m") = 2, py::call_guard<py::gil_scoped_release>());

  m.def("summary_columns", &summary_columns);
  m.def("trace_columns", &trace_columns);
}
