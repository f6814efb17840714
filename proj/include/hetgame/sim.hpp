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
#include <ostream>
#include <string>
#include <vector>

#include "hetgame/channel.hpp"
#include "hetgame/config.hpp"
#include "hetgame/leader.hpp"
#include "hetgame/ocf.hpp"

namespace hetgame {

struct RunOptions {
  bool single_subband = false;  // coalition formation without overlapping
  bool use_history = true;
  std::ostream* trace = nullptr;  // trace CSV sink; header included
  std::string run_id = "0";
};

struct EquilibriumOutcome {
  ScenarioConfig config;
  PriceVector prices;
  std::vector<std::uint8_t> frozen;
  CoalitionStructure structure;
  std::vector<double> uu_payoffs;
  double mco_payoff = 0.0;
  std::vector<double> interference;

  double start_price = 0.0;
  std::size_t iteration_bound = 0;  // geometric descent steps from start_price to the floor
  std::size_t outer_iterations = 0;
  std::size_t inner_iterations_total = 0;  // negotiation rounds over every formation
  std::size_t formations = 0;

  bool prices_terminated = false;  // every sub-band frozen within the budget
  bool interference_feasible = false;
  bool power_feasible = false;
  double max_unilateral_gain = 0.0;  // best single-UU improvement at the outcome
  bool se_verified = false;          // max_unilateral_gain <= tolerance
  bool converged = false;            // all four checks above hold
  FormationStatus final_status = FormationStatus::stable;
  std::size_t forced_stops = 0;  // formations that hit the round budget

  std::size_t messages_total = 0;           // negotiation messages, every formation
  std::size_t max_formation_messages = 0;   // largest single formation, discovery included
  std::size_t max_round_messages = 0;       // largest single negotiation round
  std::size_t max_formation_rounds = 0;
  std::vector<SupportMask> supports_seen;   // sorted, unique

  std::string trace_path;

  double uu_payoff_sum() const;
  double mean_price() const;
  /// True when the final formation hit the round budget.
  bool flagged() const { return final_status == FormationStatus::forced_stop; }
};

/// Hierarchical game on a freshly generated channel.
EquilibriumOutcome run_hierarchical(const ScenarioConfig& config, const RunOptions& options = {});
EquilibriumOutcome run_hierarchical(const ScenarioConfig& config, const ChannelRealization& real,
                                    const RunOptions& options = {});

/// Same loop with every UU restricted to at most one sub-band.
EquilibriumOutcome run_cf_baseline(const ScenarioConfig& config, RunOptions options = {});
EquilibriumOutcome run_cf_baseline(const ScenarioConfig& config, const ChannelRealization& real,
                                   RunOptions options = {});

/// Start price mu_bar, slightly inflated so no UU demands power at it.
double start_price(const ChannelRealization& real);

/// Largest payoff gain any single UU gets from one more best response at
/// the outcome's prices, ignoring the history rule.
double max_unilateral_gain(const EquilibriumOutcome& outcome, const ChannelRealization& real,
                           bool single_subband = false);

/// Frozen sub-bands whose stop is not justified: lowering only that price
/// by (1 - eps) and re-forming coalitions keeps its interference within the
/// cap. Sub-bands frozen at the price floor are skipped.
std::vector<std::size_t> unjustified_freezes(const EquilibriumOutcome& outcome, const ChannelRealization& real,
                                             bool single_subband = false);

/// Discovery messages of one formation.
std::size_t discovery_messages(std::size_t num_uus);

/// [(2^K - 1)(K - 1) K M + 3K - 2] * v. Saturates at the largest value for K >= 63.
double worst_case_control_bits(std::size_t num_uus, std::size_t num_subbands, double v_bits);

struct OverheadReport {
  double control_bits = 0.0;         // largest formation, in bits
  double control_bits_total = 0.0;   // every formation of the run, in bits
  double worst_case_bits = 0.0;
  double time_overhead_paper = 0.0;  // t / (K tau + t)
  double time_overhead_measured = 0.0;  // L tau / (L tau + t)
  std::size_t complexity_ops = 0;    // largest per-round negotiation message count
  std::size_t complexity_bound = 0;  // (K - 1) K M
};

/// Throws std::invalid_argument unless v_bits, tau_slot and t_data are > 0.
OverheadReport overhead_report(const EquilibriumOutcome& outcome, double v_bits, double tau_slot, double t_data);

/// The fields overhead_report needs, as recovered from a run summary.
struct OverheadInputs {
  std::size_t num_uus = 0;
  std::size_t num_subbands = 0;
  std::size_t outer_iterations = 0;
  std::size_t messages_total = 0;
  std::size_t formations = 0;
  std::size_t max_formation_messages = 0;
  std::size_t max_round_messages = 0;
};

OverheadReport overhead_report(const OverheadInputs& inputs, double v_bits, double tau_slot, double t_data);

/// Column names and values of one run-summary row (config echo first).
std::vector<std::string> summary_columns();
std::vector<std::string> summary_values(const EquilibriumOutcome& outcome, const std::string& run_id,
                                        const std::string& arm);

}  // namespace hetgame
