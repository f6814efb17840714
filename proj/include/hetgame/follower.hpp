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
#include <limits>
#include <span>
#include <vector>

#include "hetgame/channel.hpp"
#include "hetgame/config.hpp"
#include "hetgame/matrix.hpp"

namespace hetgame {

/// Interference price per sub-band.
using PriceVector = std::vector<double>;

/// K x M transmit powers; row k is UU k's allocation, column m is the
/// partial coalition on sub-band m.
using PowerAllocation = Matrix;

/// K x M payoff-division factors (lambda); zero where the UU is not a member.
using PayoffDivision = Matrix;

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Maximizer of log(1 + lambda p) - mu h p over p >= 0:
/// (1/(mu h) - 1/lambda)^+, never above `ceiling`. Zero when lambda = 0;
/// `ceiling` when mu h = 0 and lambda > 0.
double waterfill_power(double lambda, double mu, double h, double ceiling = kUnbounded);

/// log(1 + lambda p) - mu h p (natural log).
double subband_payoff(double power, double mu, double lambda, double h);

struct SubbandSelection {
  std::vector<std::size_t> subset;  // ascending sub-band indices
  std::vector<double> power;        // length M
  std::vector<std::uint8_t> indicator;
  bool cap_binding = false;         // the candidate powers did not all fit
  bool exact = true;                // false when the greedy path was taken
};

/// Sub-bands a UU keeps given per-sub-band candidate powers and payoffs.
///
/// Sub-bands with payoff <= 0 are never chosen. If the remaining powers fit
/// under `cap` all are kept; otherwise the payoff-maximizing subset that fits
/// is returned (exact search up to `exact_threshold` candidates, ties to the
/// lexicographically smallest subset; greedy by payoff/power beyond).
/// `max_subbands` restricts the subset size; only 1 and unlimited are
/// supported. Throws std::invalid_argument if cap < 0.
SubbandSelection select_subbands(std::span<const double> candidate_power,
                                 std::span<const double> candidate_payoff, double cap,
                                 std::size_t exact_threshold,
                                 std::size_t max_subbands = std::numeric_limits<std::size_t>::max());

struct BestResponse {
  std::vector<double> power;
  std::vector<std::uint8_t> indicator;
  double payoff = 0.0;
  bool cap_binding = false;
};

/// Best response of UU k to prices `mu` given its division factors
/// `lambda_row` (length M). Per-sub-band candidates are water-filled powers
/// clipped at the power cap; the subset step then enforces the cap jointly.
BestResponse best_response(std::size_t k, std::span<const double> mu,
                           std::span<const double> lambda_row, const ChannelRealization& real,
                           const ScenarioConfig& config, bool single_subband = false);

/// Same, reading UU k's row from a full division matrix.
BestResponse best_response(std::size_t k, std::span<const double> mu, const PayoffDivision& lambda,
                           const ChannelRealization& real, const ScenarioConfig& config,
                           bool single_subband = false);

/// Total payoff of a UU row: sum over sub-bands of subband_payoff.
double uu_payoff(std::span<const double> power_row, std::span<const double> mu,
                 std::span<const double> lambda_row, std::span<const double> gain_row);

}  // namespace hetgame
