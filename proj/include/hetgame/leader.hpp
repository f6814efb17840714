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
#include <functional>
#include <span>
#include <vector>

#include "hetgame/channel.hpp"
#include "hetgame/follower.hpp"

namespace hetgame {

/// Prices below this are treated as converged to zero and frozen.
inline constexpr double kPriceFloor = 1e-12;

struct PriceState {
  PriceVector mu;
  PriceVector mu_prev;
  std::vector<std::uint8_t> frozen;
  std::size_t t = 0;

  static PriceState initial(double start_price, std::size_t num_subbands);
  bool all_frozen() const;
  std::size_t frozen_count() const;
};

/// mu_bar = lambda_max / h_min where h_min is the smallest positive macro
/// gain. Any (lambda <= lambda_max, h >= h_min) pair demands zero power at
/// mu_bar. Throws std::runtime_error("degenerate channel") if H is all zero.
double price_upper_bound(const ChannelRealization& real, double lambda_max);

/// Sum_k P(k, m) H(k, m).
double aggregate_interference(const PowerAllocation& power, const ChannelRealization& real, std::size_t m);

std::vector<double> aggregate_interference(const PowerAllocation& power, const ChannelRealization& real);

/// Sum_m mu_m * aggregate_interference(m).
double mco_revenue(const PowerAllocation& power, std::span<const double> mu, const ChannelRealization& real);

/// One leader update. For each unfrozen sub-band: interference above the cap
/// freezes it at the previous price; otherwise the price decays by (1 - eps)
/// and freezes once it reaches the floor.
PriceState price_step(const PriceState& state, std::span<const double> interference, double interference_cap,
                      double epsilon);

/// Steps needed for mu_bar (1 - eps)^t to reach the price floor.
std::size_t price_iteration_bound(double start_price, double epsilon);

/// Price at which sum_k min((1/(mu h_k) - 1/lambda_k)^+, ceiling) h_k equals
/// the cap, by bisection to 1e-9 relative width. Returns 0 when even the
/// near-zero-price demand stays within the cap. Verification only; the game
/// itself never uses it. Throws std::invalid_argument without a positive
/// (lambda, h) pair.
double exact_price_oracle(std::span<const double> lambda, std::span<const double> gain, double interference_cap,
                          double ceiling = kUnbounded);

/// Interference per sub-band observed when the followers respond to `mu`.
using DemandFunction = std::function<std::vector<double>(const PriceVector& mu)>;
using PriceObserver = std::function<void(const PriceState&, const std::vector<double>& interference)>;

struct DescentResult {
  PriceState state;
  std::vector<double> interference;  // at the final prices
  bool terminated = false;           // every sub-band frozen within the budget
};

/// Distributed price descent: start every sub-band at `start_price`, observe
/// the followers, step, repeat until all sub-bands are frozen or `max_iters`
/// steps were taken. `demand` is called once per iteration, last at the
/// final prices.
DescentResult descend_prices(double start_price, std::size_t num_subbands, double interference_cap, double epsilon,
                             std::size_t max_iters, const DemandFunction& demand,
                             const PriceObserver& observe = {});

}  // namespace hetgame
