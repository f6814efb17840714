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

#include "hetgame/follower.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hetgame {

double waterfill_power(double lambda, double mu, double h, double ceiling) {
  if (!(lambda > 0.0)) return 0.0;
  const double unit_cost = mu * h;
  if (!(unit_cost > 0.0)) return ceiling;
  const double p = 1.0 / unit_cost - 1.0 / lambda;
  if (!(p > 0.0)) return 0.0;
  return std::min(p, ceiling);
}

double subband_payoff(double power, double mu, double lambda, double h) {
  return std::log1p(lambda * power) - mu * h * power;
}

double uu_payoff(std::span<const double> power_row, std::span<const double> mu,
                 std::span<const double> lambda_row, std::span<const double> gain_row) {
  double total = 0.0;
  for (std::size_t m = 0; m < power_row.size(); ++m) {
    if (power_row[m] > 0.0) total += subband_payoff(power_row[m], mu[m], lambda_row[m], gain_row[m]);
  }
  return total;
}

namespace {

struct Candidate {
  std::size_t index;
  double power;
  double payoff;
};

bool by_ratio(const Candidate& a, const Candidate& b) {
  const double lhs = a.payoff * b.power;
  const double rhs = b.payoff * a.power;
  if (lhs != rhs) return lhs > rhs;
  return a.index < b.index;
}

// Lexicographic order of the ascending position lists encoded by two masks.
bool lex_less(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t diff = a ^ b;
  if (diff == 0) return false;
  const std::uint32_t low = diff & (~diff + 1);
  const std::uint32_t above = ~((low << 1) - 1);
  if (a & low) return (b & above) != 0;
  return (a & above) == 0;
}

// Depth-first include/exclude search in payoff-per-power order with the
// fractional-knapsack relaxation as upper bound. Leaves are re-evaluated with
// canonical (ascending-index) sums so the result matches plain enumeration.
class SubsetSearch {
 public:
  SubsetSearch(const std::vector<Candidate>& active, double cap) : active_(active), cap_(cap) {
    order_.resize(active.size());
    for (std::size_t i = 0; i < active.size(); ++i) order_[i] = i;
    std::sort(order_.begin(), order_.end(),
              [&](std::size_t a, std::size_t b) { return by_ratio(active_[a], active_[b]); });
  }

  std::vector<std::size_t> run() {
    recurse(0, 0, 0.0, 0.0);
    std::vector<std::size_t> out;
    for (std::size_t pos = 0; pos < active_.size(); ++pos) {
      if (best_mask_ & (1u << pos)) out.push_back(active_[pos].index);
    }
    return out;
  }

 private:
  double relaxation(std::size_t from, double weight) const {
    double room = cap_ - weight;
    double bound = 0.0;
    for (std::size_t i = from; i < order_.size() && room > 0.0; ++i) {
      const Candidate& c = active_[order_[i]];
      if (c.power <= room) {
        bound += c.payoff;
        room -= c.power;
      } else {
        bound += c.payoff * (room / c.power);
        room = 0.0;
      }
    }
    return bound;
  }

  void leaf(std::uint32_t mask) {
    double power = 0.0;
    double value = 0.0;
    for (std::size_t pos = 0; pos < active_.size(); ++pos) {
      if (mask & (1u << pos)) {
        power += active_[pos].power;
        value += active_[pos].payoff;
      }
    }
    if (power > cap_) return;
    if (value > best_value_ || (value == best_value_ && lex_less(mask, best_mask_))) {
      best_value_ = value;
      best_mask_ = mask;
    }
  }

  void recurse(std::size_t depth, std::uint32_t mask, double weight, double value) {
    const double slack = 1e-9 * (1.0 + std::abs(best_value_));
    if (value + relaxation(depth, weight) < best_value_ - slack) return;
    if (depth == order_.size()) {
      leaf(mask);
      return;
    }
    const std::size_t pos = order_[depth];
    const Candidate& item = active_[pos];
    if (weight + item.power <= cap_ * (1.0 + 1e-12) + 1e-300) {
      recurse(depth + 1, mask | (1u << pos), weight + item.power, value + item.payoff);
    }
    recurse(depth + 1, mask, weight, value);
  }

  const std::vector<Candidate>& active_;
  double cap_;
  std::vector<std::size_t> order_;
  std::uint32_t best_mask_ = 0;
  double best_value_ = 0.0;
};

}  // namespace

SubbandSelection select_subbands(std::span<const double> candidate_power, std::span<const double> candidate_payoff,
                                 double cap, std::size_t exact_threshold, std::size_t max_subbands) {
  if (cap < 0.0) throw std::invalid_argument("select_subbands: power cap must be >= 0");
  if (candidate_power.size() != candidate_payoff.size()) {
    throw std::invalid_argument("select_subbands: length mismatch");
  }
  if (max_subbands != 1 && max_subbands != std::numeric_limits<std::size_t>::max()) {
    throw std::invalid_argument("select_subbands: only single or unrestricted subsets are supported");
  }
  const std::size_t num_subbands = candidate_power.size();

  std::vector<Candidate> active;
  for (std::size_t m = 0; m < num_subbands; ++m) {
    if (candidate_payoff[m] > 0.0 && candidate_power[m] > 0.0) {
      active.push_back({m, candidate_power[m], candidate_payoff[m]});
    }
  }

  SubbandSelection sel;
  sel.power.assign(num_subbands, 0.0);
  sel.indicator.assign(num_subbands, 0);

  double total = 0.0;
  for (const auto& c : active) total += c.power;

  if (total <= cap && active.size() <= max_subbands) {
    for (const auto& c : active) sel.subset.push_back(c.index);
  } else {
    sel.cap_binding = true;
    if (max_subbands == 1) {
      const Candidate* best = nullptr;
      for (const auto& c : active) {
        if (c.power <= cap && (best == nullptr || c.payoff > best->payoff)) best = &c;
      }
      if (best != nullptr) sel.subset.push_back(best->index);
    } else if (active.size() <= exact_threshold) {
      sel.subset = SubsetSearch(active, cap).run();
    } else {
      sel.exact = false;
      auto order = active;
      std::sort(order.begin(), order.end(), by_ratio);
      double used = 0.0;
      for (const auto& c : order) {
        if (used + c.power <= cap) {
          used += c.power;
          sel.subset.push_back(c.index);
        }
      }
      std::sort(sel.subset.begin(), sel.subset.end());
    }
  }

  for (auto m : sel.subset) {
    sel.power[m] = candidate_power[m];
    sel.indicator[m] = sel.power[m] > 0.0 ? 1 : 0;
  }
  return sel;
}

BestResponse best_response(std::size_t k, std::span<const double> mu, std::span<const double> lambda_row,
                           const ChannelRealization& real, const ScenarioConfig& config, bool single_subband) {
  const std::size_t num_subbands = real.num_subbands();
  if (mu.size() != num_subbands || lambda_row.size() != num_subbands) {
    throw std::invalid_argument("best_response: expected length-M prices and divisions");
  }
  if (k >= real.num_uus()) throw std::out_of_range("best_response: UU index");

  std::vector<double> candidate_power(num_subbands, 0.0);
  std::vector<double> candidate_payoff(num_subbands, 0.0);
  for (std::size_t m = 0; m < num_subbands; ++m) {
    const double h = real.macro_gain(k, m);
    const double p = waterfill_power(lambda_row[m], mu[m], h, config.power_cap);
    candidate_power[m] = p;
    candidate_payoff[m] = p > 0.0 ? subband_payoff(p, mu[m], lambda_row[m], h) : 0.0;
  }
  const auto sel = select_subbands(candidate_power, candidate_payoff, config.power_cap, config.subset_exact_threshold,
                                   single_subband ? 1 : std::numeric_limits<std::size_t>::max());
  BestResponse br;
  br.power = sel.power;
  br.indicator = sel.indicator;
  br.cap_binding = sel.cap_binding;
  for (auto m : sel.subset) br.payoff += candidate_payoff[m];
  return br;
}

BestResponse best_response(std::size_t k, std::span<const double> mu, const PayoffDivision& lambda,
                           const ChannelRealization& real, const ScenarioConfig& config, bool single_subband) {
  return best_response(k, mu, lambda.row(k), real, config, single_subband);
}

}  // namespace hetgame
