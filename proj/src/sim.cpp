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

#include "hetgame/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "hetgame/trace.hpp"

namespace hetgame {

double EquilibriumOutcome::uu_payoff_sum() const {
  return std::accumulate(uu_payoffs.begin(), uu_payoffs.end(), 0.0);
}

double EquilibriumOutcome::mean_price() const {
  if (prices.empty()) return 0.0;
  return std::accumulate(prices.begin(), prices.end(), 0.0) / static_cast<double>(prices.size());
}

double start_price(const ChannelRealization& real) {
  return price_upper_bound(real, max_attainable_lambda(real)) * (1.0 + 1e-9);
}

std::size_t discovery_messages(std::size_t num_uus) { return 3 * num_uus - 2; }

namespace {

void check_shape(const ScenarioConfig& config, const ChannelRealization& real) {
  config.validate();
  real.validate();
  if (real.num_uus() != config.num_uus || real.num_subbands() != config.num_subbands) {
    throw std::invalid_argument("channel shape does not match the config");
  }
}

double unilateral_gain(const CoalitionStructure& s, std::span<const double> mu, const ChannelRealization& real,
                       const ScenarioConfig& config, bool single_subband, PayoffDivisionCache& cache) {
  double worst = 0.0;
  std::vector<double> lambda_row(real.num_subbands());
  for (std::size_t k = 0; k < real.num_uus(); ++k) {
    const SupportMask self = SupportMask{1} << k;
    for (std::size_t m = 0; m < real.num_subbands(); ++m) {
      lambda_row[m] = cache.lambda_of(m, column_support(s.power, m) | self, k);
    }
    const auto br = best_response(k, mu, lambda_row, real, config, single_subband);
    worst = std::max(worst, br.payoff - s.uu_payoffs[k]);
  }
  return worst;
}

EquilibriumOutcome run_game(const ScenarioConfig& config, const ChannelRealization& real,
                            const RunOptions& options) {
  check_shape(config, real);
  PayoffDivisionCache cache(real);
  TraceWriter trace(options.trace, options.run_id);
  trace.header();

  EquilibriumOutcome out;
  out.config = config;
  out.start_price = start_price(real);
  out.iteration_bound = price_iteration_bound(out.start_price, config.epsilon);
  const std::size_t budget =
      config.max_outer_iters != 0 ? config.max_outer_iters : std::max<std::size_t>(1, 10 * out.iteration_bound);

  const FormationOptions fopts{options.single_subband, options.use_history};
  const std::size_t discovery = discovery_messages(config.num_uus);
  std::set<SupportMask> supports;
  FormationResult last;

  auto demand = [&](const PriceVector& mu) {
    last = form_coalitions(mu, real, config, fopts, &cache);
    const auto& n = last.negotiation;
    trace.coalition(out.formations, last, mu, real);
    ++out.formations;
    out.inner_iterations_total += n.rounds;
    out.messages_total += n.messages_total + discovery;
    out.max_formation_messages = std::max(out.max_formation_messages, n.messages_total + discovery);
    out.max_round_messages = std::max(out.max_round_messages, n.max_round_messages);
    out.max_formation_rounds = std::max(out.max_formation_rounds, n.rounds);
    out.forced_stops += n.status == FormationStatus::forced_stop ? 1 : 0;
    supports.insert(n.supports_seen.begin(), n.supports_seen.end());
    return aggregate_interference(last.structure.power, real);
  };
  auto observe = [&](const PriceState& state, const std::vector<double>& interference) {
    trace.price(state, interference);
  };

  const DescentResult descent = descend_prices(out.start_price, config.num_subbands, config.interference_cap,
                                               config.epsilon, budget, demand, observe);

  out.prices = descent.state.mu;
  out.frozen = descent.state.frozen;
  out.outer_iterations = descent.state.t;
  out.prices_terminated = descent.terminated;
  out.interference = descent.interference;
  out.structure = std::move(last.structure);
  out.final_status = last.negotiation.status;
  out.uu_payoffs = out.structure.uu_payoffs;
  out.mco_payoff = mco_revenue(out.structure.power, out.prices, real);
  out.supports_seen.assign(supports.begin(), supports.end());

  const double q_slack = 1e-12 * std::max(1.0, config.interference_cap);
  out.interference_feasible = std::all_of(out.interference.begin(), out.interference.end(),
                                          [&](double q) { return q <= config.interference_cap + q_slack; });
  out.power_feasible = true;
  for (std::size_t k = 0; k < config.num_uus; ++k) {
    const auto row = out.structure.power.row(k);
    const double total = std::accumulate(row.begin(), row.end(), 0.0);
    if (total > config.power_cap * (1.0 + 1e-12)) out.power_feasible = false;
  }
  out.max_unilateral_gain =
      unilateral_gain(out.structure, out.prices, real, config, options.single_subband, cache);
  out.se_verified = out.max_unilateral_gain <= config.tolerance;
  out.converged = out.prices_terminated && out.interference_feasible && out.power_feasible && out.se_verified;

  trace.final_state(descent.state, out.structure, out.interference, real);
  return out;
}

}  // namespace

EquilibriumOutcome run_hierarchical(const ScenarioConfig& config, const RunOptions& options) {
  config.validate();
  return run_hierarchical(config, generate_channel(config), options);
}

EquilibriumOutcome run_hierarchical(const ScenarioConfig& config, const ChannelRealization& real,
                                    const RunOptions& options) {
  return run_game(config, real, options);
}

EquilibriumOutcome run_cf_baseline(const ScenarioConfig& config, RunOptions options) {
  config.validate();
  return run_cf_baseline(config, generate_channel(config), std::move(options));
}

EquilibriumOutcome run_cf_baseline(const ScenarioConfig& config, const ChannelRealization& real, RunOptions options) {
  options.single_subband = true;
  return run_game(config, real, options);
}

double max_unilateral_gain(const EquilibriumOutcome& outcome, const ChannelRealization& real, bool single_subband) {
  PayoffDivisionCache cache(real);
  return unilateral_gain(outcome.structure, outcome.prices, real, outcome.config, single_subband, cache);
}

std::vector<std::size_t> unjustified_freezes(const EquilibriumOutcome& outcome, const ChannelRealization& real,
                                             bool single_subband) {
  PayoffDivisionCache cache(real);
  std::vector<std::size_t> bad;
  const auto& config = outcome.config;
  for (std::size_t m = 0; m < outcome.prices.size(); ++m) {
    if (!outcome.frozen[m] || outcome.prices[m] <= kPriceFloor) continue;
    PriceVector lowered = outcome.prices;
    lowered[m] *= 1.0 - config.epsilon;
    const auto f = form_coalitions(lowered, real, config, {single_subband, true}, &cache);
    if (aggregate_interference(f.structure.power, real, m) <= config.interference_cap) bad.push_back(m);
  }
  return bad;
}

double worst_case_control_bits(std::size_t num_uus, std::size_t num_subbands, double v_bits) {
  const double k = static_cast<double>(num_uus);
  const double subsets = std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(num_uus, 1000))) - 1.0;
  return (subsets * (k - 1.0) * k * static_cast<double>(num_subbands) + 3.0 * k - 2.0) * v_bits;
}

OverheadReport overhead_report(const OverheadInputs& in, double v_bits, double tau_slot, double t_data) {
  if (!(v_bits > 0.0) || !(tau_slot > 0.0) || !(t_data > 0.0)) {
    throw std::invalid_argument("overhead_report: v_bits, tau_slot and t_data must be > 0");
  }
  OverheadReport r;
  r.control_bits = static_cast<double>(in.max_formation_messages) * v_bits;
  r.control_bits_total = static_cast<double>(in.messages_total) * v_bits;
  r.worst_case_bits = worst_case_control_bits(in.num_uus, in.num_subbands, v_bits);
  const double k = static_cast<double>(in.num_uus);
  const double l = static_cast<double>(in.outer_iterations);
  r.time_overhead_paper = t_data / (k * tau_slot + t_data);
  r.time_overhead_measured = l * tau_slot / (l * tau_slot + t_data);
  r.complexity_ops = in.max_round_messages;
  r.complexity_bound = in.num_uus == 0 ? 0 : (in.num_uus - 1) * in.num_uus * in.num_subbands;
  return r;
}

OverheadReport overhead_report(const EquilibriumOutcome& outcome, double v_bits, double tau_slot, double t_data) {
  OverheadInputs in;
  in.num_uus = outcome.config.num_uus;
  in.num_subbands = outcome.config.num_subbands;
  in.outer_iterations = outcome.outer_iterations;
  in.messages_total = outcome.messages_total;
  in.formations = outcome.formations;
  in.max_formation_messages = outcome.max_formation_messages;
  in.max_round_messages = outcome.max_round_messages;
  return overhead_report(in, v_bits, tau_slot, t_data);
}

std::vector<std::string> summary_columns() {
  std::vector<std::string> cols = {"run_id", "arm"};
  for (const auto& key : config_keys()) cols.push_back(key);
  for (const char* name :
       {"converged", "prices_terminated", "interference_feasible", "power_feasible", "se_verified",
        "max_unilateral_gain", "final_status", "forced_stops", "start_price", "iteration_bound", "outer_iterations",
        "inner_iterations_total", "formations", "mco_payoff", "uu_payoff_sum", "mean_price", "active_uus",
        "num_coalitions", "avg_memberships", "max_interference", "messages_total", "max_formation_messages",
        "max_round_messages", "max_formation_rounds", "distinct_supports"}) {
    cols.emplace_back(name);
  }
  return cols;
}

std::vector<std::string> summary_values(const EquilibriumOutcome& o, const std::string& run_id,
                                        const std::string& arm) {
  std::vector<std::string> v = {run_id, arm};
  for (auto& [key, value] : config_fields(o.config)) v.push_back(value);
  auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
  auto count = [](std::size_t n) { return std::to_string(n); };
  const double max_q = o.interference.empty() ? 0.0 : *std::max_element(o.interference.begin(), o.interference.end());
  v.push_back(flag(o.converged));
  v.push_back(flag(o.prices_terminated));
  v.push_back(flag(o.interference_feasible));
  v.push_back(flag(o.power_feasible));
  v.push_back(flag(o.se_verified));
  v.push_back(format_number(o.max_unilateral_gain));
  v.push_back(to_string(o.final_status));
  v.push_back(count(o.forced_stops));
  v.push_back(format_number(o.start_price));
  v.push_back(count(o.iteration_bound));
  v.push_back(count(o.outer_iterations));
  v.push_back(count(o.inner_iterations_total));
  v.push_back(count(o.formations));
  v.push_back(format_number(o.mco_payoff));
  v.push_back(format_number(o.uu_payoff_sum()));
  v.push_back(format_number(o.mean_price()));
  v.push_back(count(o.structure.active_uus()));
  v.push_back(count(o.structure.num_coalitions()));
  v.push_back(format_number(o.structure.average_memberships()));
  v.push_back(format_number(max_q));
  v.push_back(count(o.messages_total));
  v.push_back(count(o.max_formation_messages));
  v.push_back(count(o.max_round_messages));
  v.push_back(count(o.max_formation_rounds));
  v.push_back(count(o.supports_seen.size()));
  return v;
}

}  // namespace hetgame
