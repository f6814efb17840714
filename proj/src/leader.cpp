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

#include "hetgame/leader.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hetgame {

PriceState PriceState::initial(double start_price, std::size_t num_subbands) {
  PriceState s;
  s.mu.assign(num_subbands, start_price);
  s.mu_prev = s.mu;
  s.frozen.assign(num_subbands, 0);
  return s;
}

bool PriceState::all_frozen() const {
  return std::all_of(frozen.begin(), frozen.end(), [](std::uint8_t f) { return f != 0; });
}

std::size_t PriceState::frozen_count() const {
  return static_cast<std::size_t>(std::count(frozen.begin(), frozen.end(), std::uint8_t{1}));
}

double price_upper_bound(const ChannelRealization& real, double lambda_max) {
  double h_min = std::numeric_limits<double>::infinity();
  for (double h : real.macro_gains.data()) {
    if (h > 0.0) h_min = std::min(h_min, h);
  }
  if (!std::isfinite(h_min)) throw std::runtime_error("degenerate channel");
  return lambda_max / h_min;
}

double aggregate_interference(const PowerAllocation& power, const ChannelRealization& real, std::size_t m) {
  double total = 0.0;
  for (std::size_t k = 0; k < power.rows(); ++k) total += power(k, m) * real.macro_gain(k, m);
  return total;
}

std::vector<double> aggregate_interference(const PowerAllocation& power, const ChannelRealization& real) {
  std::vector<double> out(power.cols());
  for (std::size_t m = 0; m < power.cols(); ++m) out[m] = aggregate_interference(power, real, m);
  return out;
}

double mco_revenue(const PowerAllocation& power, std::span<const double> mu, const ChannelRealization& real) {
  double total = 0.0;
  for (std::size_t m = 0; m < power.cols(); ++m) total += mu[m] * aggregate_interference(power, real, m);
  return total;
}

PriceState price_step(const PriceState& state, std::span<const double> interference, double interference_cap,
                      double epsilon) {
  if (interference.size() != state.mu.size()) throw std::invalid_argument("price_step: length mismatch");
  PriceState next = state;
  for (std::size_t m = 0; m < state.mu.size(); ++m) {
    if (state.frozen[m]) continue;
    if (interference[m] > interference_cap) {
      next.frozen[m] = 1;
      next.mu[m] = state.mu_prev[m];
      next.mu_prev[m] = state.mu_prev[m];
      continue;
    }
    next.mu_prev[m] = state.mu[m];
    next.mu[m] = (1.0 - epsilon) * state.mu[m];
    if (next.mu[m] <= kPriceFloor) next.frozen[m] = 1;
  }
  ++next.t;
  return next;
}

std::size_t price_iteration_bound(double start_price, double epsilon) {
  if (start_price <= kPriceFloor) return 0;
  return static_cast<std::size_t>(std::ceil(std::log(kPriceFloor / start_price) / std::log1p(-epsilon)));
}

double exact_price_oracle(std::span<const double> lambda, std::span<const double> gain, double interference_cap,
                          double ceiling) {
  if (lambda.size() != gain.size()) throw std::invalid_argument("exact_price_oracle: length mismatch");
  double lambda_max = 0.0;
  double h_min = std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] > 0.0 && gain[i] > 0.0) {
      any = true;
      lambda_max = std::max(lambda_max, lambda[i]);
      h_min = std::min(h_min, gain[i]);
    }
  }
  if (!any) throw std::invalid_argument("exact_price_oracle: no positive (lambda, h) pair");

  auto demand = [&](double mu) {
    double total = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      if (lambda[i] > 0.0 && gain[i] > 0.0) total += waterfill_power(lambda[i], mu, gain[i], ceiling) * gain[i];
    }
    return total;
  };

  double saturated = 0.0;
  if (std::isfinite(ceiling)) {
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      if (lambda[i] > 0.0 && gain[i] > 0.0) saturated += ceiling * gain[i];
    }
    if (saturated <= interference_cap) return 0.0;
  }

  double hi = lambda_max / h_min;  // zero demand here
  double lo = hi;
  while (demand(lo) <= interference_cap) {
    lo *= 0.5;
    if (lo < std::numeric_limits<double>::min()) return 0.0;
  }
  while ((hi - lo) > 1e-9 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (demand(mid) > interference_cap) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

DescentResult descend_prices(double start_price, std::size_t num_subbands, double interference_cap, double epsilon,
                             std::size_t max_iters, const DemandFunction& demand, const PriceObserver& observe) {
  DescentResult result;
  result.state = PriceState::initial(start_price, num_subbands);
  result.interference = demand(result.state.mu);
  if (observe) observe(result.state, result.interference);
  while (!result.state.all_frozen() && result.state.t < max_iters) {
    result.state = price_step(result.state, result.interference, interference_cap, epsilon);
    result.interference = demand(result.state.mu);
    if (observe) observe(result.state, result.interference);
  }
  result.terminated = result.state.all_frozen();
  return result;
}

}  // namespace hetgame
