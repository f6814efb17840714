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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hetgame/leader.hpp"
#include "hetgame/mimo.hpp"

namespace hetgame {
namespace {

ChannelRealization channel(std::size_t k, std::size_t m, std::uint64_t seed) {
  ScenarioConfig c;
  c.num_uus = k;
  c.num_subbands = m;
  c.seed = seed;
  return generate_channel(c);
}

TEST(PriceUpperBound, SingleUser) {
  ChannelRealization r;
  r.macro_gains = Matrix(1, 1, 2.0);
  r.femto_gains.assign(1, Matrix(1, 1, 2.0));
  r.noise = Matrix(1, 1, 1.0);
  EXPECT_DOUBLE_EQ(price_upper_bound(r, 4.0), 2.0);
  EXPECT_EQ(waterfill_power(4.0, 2.0, 2.0), 0.0);
}

TEST(PriceUpperBound, DegenerateChannel) {
  ChannelRealization r;
  r.macro_gains = Matrix(2, 2, 0.0);
  EXPECT_THROW(price_upper_bound(r, 1.0), std::runtime_error);
}

TEST(PriceUpperBound, ZeroDemandAboveAndPositiveJustBelow) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto r = channel(4, 3, seed);
    const double lmax = max_attainable_lambda(r);
    const double bound = price_upper_bound(r, lmax);
    double h_min = INFINITY;
    for (double h : r.macro_gains.data()) h_min = std::min(h_min, h);
    for (std::size_t m = 0; m < 3; ++m) {
      for (SupportMask mask = 1; mask < 16; ++mask) {
        const auto s = Support::from_mask(m, mask);
        const auto lam = payoff_division_for(r, s);
        for (std::size_t i = 0; i < lam.size(); ++i) {
          EXPECT_EQ(waterfill_power(lam[i], bound * (1 + 1e-9), r.macro_gain(s.members[i], m)), 0.0);
        }
      }
    }
    EXPECT_GT(waterfill_power(lmax, 0.99 * bound, h_min), 0.0);
  }
}

TEST(AggregateInterference, Examples) {
  ChannelRealization r;
  r.macro_gains = Matrix(2, 1);
  r.macro_gains(0, 0) = 0.5;
  r.macro_gains(1, 0) = 0.25;
  Matrix p(2, 1);
  EXPECT_EQ(aggregate_interference(p, r, 0), 0.0);
  p(0, 0) = 1.0;
  p(1, 0) = 2.0;
  EXPECT_DOUBLE_EQ(aggregate_interference(p, r, 0), 1.0);
}

TEST(AggregateInterference, EntrywiseRecomputation) {
  const auto r = channel(5, 4, 3);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  Matrix p(5, 4);
  for (std::size_t k = 0; k < 5; ++k) {
    for (std::size_t m = 0; m < 4; ++m) p(k, m) = u(rng);
  }
  const auto all = aggregate_interference(p, r);
  for (std::size_t m = 0; m < 4; ++m) {
    double sum = 0.0;
    for (std::size_t k = 0; k < 5; ++k) sum += r.macro_gains(k, m) * p(k, m);
    EXPECT_NEAR(all[m], sum, 1e-13 * sum);
  }
}

TEST(McoRevenue, Examples) {
  ChannelRealization r;
  r.macro_gains = Matrix(1, 1, 1.0);
  Matrix p(1, 1, 1.0);
  const std::vector<double> zero{0.0}, price{0.3};
  EXPECT_EQ(mco_revenue(p, zero, r), 0.0);
  EXPECT_DOUBLE_EQ(mco_revenue(p, price, r), 0.3);
}

TEST(McoRevenue, EqualsSumOfUserCosts) {
  const auto r = channel(4, 3, 9);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  Matrix p(4, 3);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t m = 0; m < 3; ++m) p(k, m) = u(rng);
  }
  const std::vector<double> mu{0.2, 0.7, 1.1};
  double costs = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    // Cost of UU k = log terms minus its payoff.
    const std::vector<double> lam(3, 1.0);
    double logs = 0.0;
    for (std::size_t m = 0; m < 3; ++m) logs += std::log1p(p(k, m));
    costs += logs - uu_payoff(p.row(k), mu, lam, r.macro_gains.row(k));
  }
  EXPECT_NEAR(mco_revenue(p, mu, r), costs, 1e-12);
}

TEST(PriceStep, QuietSubbandsDecay) {
  auto s = PriceState::initial(1.0, 3);
  const std::vector<double> q{0, 0, 0};
  const auto next = price_step(s, q, 1.0, 0.1);
  for (double mu : next.mu) EXPECT_DOUBLE_EQ(mu, 0.9);
  EXPECT_EQ(next.mu_prev, s.mu);
  EXPECT_EQ(next.t, 1u);
  EXPECT_EQ(next.frozen_count(), 0u);
}

TEST(PriceStep, OvershootFreezesAtPreviousPrice) {
  auto s = PriceState::initial(1.0, 2);
  s = price_step(s, std::vector<double>{0, 0}, 1.0, 0.1);
  s = price_step(s, std::vector<double>{1.0 + 1e-9, 0.5}, 1.0, 0.1);
  EXPECT_TRUE(s.frozen[0]);
  EXPECT_DOUBLE_EQ(s.mu[0], 1.0);
  EXPECT_FALSE(s.frozen[1]);
  EXPECT_DOUBLE_EQ(s.mu[1], 0.81);
  // Frozen sub-bands never move again.
  const auto later = price_step(s, std::vector<double>{0, 0}, 1.0, 0.1);
  EXPECT_DOUBLE_EQ(later.mu[0], 1.0);
}

TEST(PriceStep, ExactlyAtCapKeepsDescending) {
  auto s = PriceState::initial(1.0, 1);
  s = price_step(s, std::vector<double>{1.0}, 1.0, 0.5);
  EXPECT_FALSE(s.frozen[0]);
  EXPECT_DOUBLE_EQ(s.mu[0], 0.5);
}

TEST(PriceStep, FloorFreezes) {
  auto s = PriceState::initial(2e-12, 1);
  s = price_step(s, std::vector<double>{0}, 1.0, 0.6);
  EXPECT_TRUE(s.all_frozen());
  EXPECT_LE(s.mu[0], kPriceFloor);
}

TEST(PriceIterationBound, MatchesFormula) {
  EXPECT_EQ(price_iteration_bound(1.0, 0.01),
            static_cast<std::size_t>(std::ceil(std::log(1e-12) / std::log(0.99))));
  EXPECT_EQ(price_iteration_bound(1e-13, 0.01), 0u);
}

TEST(DescendPrices, GeometricSequenceWithoutDemand) {
  const double start = 3.0, eps = 0.05;
  std::size_t calls = 0;
  auto demand = [&](const PriceVector& mu) {
    ++calls;
    return std::vector<double>(mu.size(), 0.0);
  };
  std::vector<double> trajectory;
  auto observe = [&](const PriceState& s, const std::vector<double>&) { trajectory.push_back(s.mu[0]); };
  const auto r = descend_prices(start, 2, 1.0, eps, 100000, demand, observe);
  EXPECT_TRUE(r.terminated);
  EXPECT_EQ(r.state.t, price_iteration_bound(start, eps));
  EXPECT_EQ(calls, r.state.t + 1);
  for (std::size_t t = 0; t + 1 < trajectory.size(); ++t) EXPECT_DOUBLE_EQ(trajectory[t + 1], (1 - eps) * trajectory[t]);
}

TEST(DescendPrices, BudgetExhaustionIsReported) {
  auto demand = [](const PriceVector& mu) { return std::vector<double>(mu.size(), 0.0); };
  const auto r = descend_prices(1.0, 1, 1.0, 0.01, 10, demand);
  EXPECT_FALSE(r.terminated);
  EXPECT_EQ(r.state.t, 10u);
}

TEST(ExactPriceOracle, ClosedFormSingleUser) {
  const std::vector<double> lam{4.0}, h{1.0};
  EXPECT_NEAR(exact_price_oracle(lam, h, 0.75), 1.0, 1e-8);
}

TEST(ExactPriceOracle, SaturatedReturnsZero) {
  const std::vector<double> lam{4.0, 2.0}, h{1.0, 0.5};
  EXPECT_EQ(exact_price_oracle(lam, h, 1e6, 10.0), 0.0);
}

TEST(ExactPriceOracle, NoPositivePairThrows) {
  const std::vector<double> lam{0.0, 2.0}, h{1.0, 0.0};
  EXPECT_THROW(exact_price_oracle(lam, h, 1.0), std::invalid_argument);
}

TEST(ExactPriceOracle, ResidualWithinTolerance) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> lam(0.5, 10.0), h(0.1, 3.0), q(0.5, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> l(4), g(4);
    for (auto& x : l) x = lam(rng);
    for (auto& x : g) x = h(rng);
    const double cap = q(rng);
    const double mu = exact_price_oracle(l, g, cap);
    double demand = 0.0;
    for (std::size_t i = 0; i < 4; ++i) demand += waterfill_power(l[i], mu, g[i]) * g[i];
    EXPECT_NEAR(demand, cap, 1e-6 * cap);
  }
}

}  // namespace
}  // namespace hetgame
