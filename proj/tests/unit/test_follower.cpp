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

#include "hetgame/follower.hpp"
#include "hetgame/oracles/oracles.hpp"

namespace hetgame {
namespace {

TEST(Waterfill, Examples) {
  EXPECT_DOUBLE_EQ(waterfill_power(2.0, 1.0, 1.0), 0.5);
  EXPECT_EQ(waterfill_power(1.0, 2.0, 1.0), 0.0);
  EXPECT_EQ(waterfill_power(0.0, 1.0, 1.0), 0.0);
  EXPECT_EQ(waterfill_power(0.0, 0.0, 0.0), 0.0);
}

TEST(Waterfill, ZeroPriceHitsCeiling) {
  EXPECT_EQ(waterfill_power(2.0, 0.0, 1.0, 7.0), 7.0);
  EXPECT_EQ(waterfill_power(2.0, 1.0, 0.0, 7.0), 7.0);
  EXPECT_EQ(waterfill_power(2.0, 0.1, 1.0, 3.0), 3.0);
}

TEST(Waterfill, MatchesGridOracle) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> lam(0.01, 10.0), mu(0.05, 5.0), h(0.05, 5.0);
  for (int i = 0; i < 300; ++i) {
    const double l = lam(rng), m = mu(rng), g = h(rng);
    const double p = waterfill_power(l, m, g);
    const auto grid = oracle::grid_waterfill(l, m, g, 10.0 / (m * g), 1e-4);
    EXPECT_GE(subband_payoff(p, m, l, g), grid.payoff - 1e-6);
    // Concavity witness against the two neighbours.
    const double here = subband_payoff(p, m, l, g);
    EXPECT_GE(here, subband_payoff(p + 1e-4, m, l, g));
    if (p >= 1e-4) {
      EXPECT_GE(here, subband_payoff(p - 1e-4, m, l, g));
    }
  }
}

TEST(Waterfill, NonIncreasingInPrice) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.05, 4.0);
  for (int i = 0; i < 200; ++i) {
    const double l = u(rng), h = u(rng);
    double prev = waterfill_power(l, 0.01, h);
    for (double m = 0.02; m < 5.0; m *= 1.3) {
      const double p = waterfill_power(l, m, h);
      EXPECT_LE(p, prev);
      prev = p;
    }
  }
}

TEST(SubbandPayoff, Examples) {
  EXPECT_EQ(subband_payoff(0.0, 1.0, 2.0, 1.0), 0.0);
  EXPECT_NEAR(subband_payoff(0.5, 1.0, 2.0, 1.0), std::log(2.0) - 0.5, 1e-15);
  EXPECT_NEAR(subband_payoff(0.5, 1.0, 2.0, 1.0), 0.19315, 1e-5);
}

TEST(SelectSubbands, CapSlackKeepsAll) {
  const std::vector<double> p{1, 1}, v{1, 2};
  const auto s = select_subbands(p, v, 5.0, 15);
  EXPECT_EQ(s.subset, (std::vector<std::size_t>{0, 1}));
  EXPECT_FALSE(s.cap_binding);
  EXPECT_EQ(s.power, p);
}

TEST(SelectSubbands, OnlyOneFits) {
  const std::vector<double> p{3, 3}, v{1, 2};
  const auto s = select_subbands(p, v, 4.0, 15);
  EXPECT_EQ(s.subset, (std::vector<std::size_t>{1}));
  EXPECT_TRUE(s.cap_binding);
  EXPECT_EQ(s.power, (std::vector<double>{0, 3}));
  EXPECT_EQ(s.indicator, (std::vector<std::uint8_t>{0, 1}));
}

TEST(SelectSubbands, NonPositivePayoffsExcluded) {
  const std::vector<double> p{1, 1, 1}, v{-1, 0, 2};
  EXPECT_EQ(select_subbands(p, v, 10.0, 15).subset, (std::vector<std::size_t>{2}));
}

TEST(SelectSubbands, TiesGoToLexicographicallySmallest) {
  const std::vector<double> p{2, 2, 2}, v{1, 1, 1};
  EXPECT_EQ(select_subbands(p, v, 4.0, 15).subset, (std::vector<std::size_t>{0, 1}));
}

TEST(SelectSubbands, Errors) {
  const std::vector<double> p{1}, v{1};
  EXPECT_THROW(select_subbands(p, v, -1.0, 15), std::invalid_argument);
  EXPECT_THROW(select_subbands(p, std::vector<double>{1, 2}, 1.0, 15), std::invalid_argument);
  EXPECT_THROW(select_subbands(p, v, 1.0, 15, 2), std::invalid_argument);
}

TEST(SelectSubbands, SingleSubbandRestriction) {
  const std::vector<double> p{1, 1, 1}, v{1, 3, 2};
  const auto s = select_subbands(p, v, 10.0, 15, 1);
  EXPECT_EQ(s.subset, (std::vector<std::size_t>{1}));
}

TEST(SelectSubbands, ZeroCapSelectsNothing) {
  const std::vector<double> p{1, 1}, v{1, 1};
  EXPECT_TRUE(select_subbands(p, v, 0.0, 15).subset.empty());
}

struct Instance {
  std::vector<double> power, payoff;
  double cap;
};

Instance random_instance(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> lam(0.1, 10.0), mu(0.02, 1.0), h(0.05, 3.0), cap(5.0, 40.0);
  Instance in;
  in.cap = cap(rng);
  for (std::size_t i = 0; i < m; ++i) {
    const double l = lam(rng), pr = mu(rng), g = h(rng);
    const double p = waterfill_power(l, pr, g, in.cap);
    in.power.push_back(p);
    in.payoff.push_back(p > 0 ? subband_payoff(p, pr, l, g) : 0.0);
  }
  return in;
}

TEST(SelectSubbands, ExactPathEqualsEnumerationBitForBit) {
  std::mt19937_64 rng(21);
  for (int seed = 0; seed < 1000; ++seed) {
    const auto in = random_instance(rng, 10);
    const auto got = select_subbands(in.power, in.payoff, in.cap, 15);
    const auto want = oracle::enumerate_subsets(in.power, in.payoff, in.cap);
    EXPECT_EQ(got.subset, want.subset) << "instance " << seed;
  }
}

TEST(SelectSubbands, GreedyWithinTenPercentOfExactOverSeeds) {
  std::mt19937_64 rng(22);
  double greedy_total = 0.0;
  double exact_total = 0.0;
  for (int seed = 0; seed < 1000; ++seed) {
    const auto in = random_instance(rng, 10);
    const auto greedy = select_subbands(in.power, in.payoff, in.cap, 0);
    EXPECT_FALSE(greedy.cap_binding && greedy.exact);
    const auto exact = oracle::enumerate_subsets(in.power, in.payoff, in.cap);
    double g = 0.0;
    double used = 0.0;
    for (auto m : greedy.subset) {
      g += in.payoff[m];
      used += in.power[m];
    }
    EXPECT_LE(used, in.cap);
    EXPECT_LE(g, exact.payoff + 1e-12);
    greedy_total += g;
    exact_total += exact.payoff;
  }
  EXPECT_GE(greedy_total, 0.9 * exact_total);
}

TEST(SelectSubbands, SingleRestrictionMatchesEnumeration) {
  std::mt19937_64 rng(23);
  for (int seed = 0; seed < 300; ++seed) {
    const auto in = random_instance(rng, 6);
    const auto got = select_subbands(in.power, in.payoff, in.cap, 15, 1);
    const auto want = oracle::enumerate_subsets(in.power, in.payoff, in.cap, 1);
    EXPECT_EQ(got.subset, want.subset);
  }
}

ChannelRealization channel(std::size_t k, std::size_t m, std::uint64_t seed) {
  ScenarioConfig c;
  c.num_uus = k;
  c.num_subbands = m;
  c.seed = seed;
  return generate_channel(c);
}

TEST(BestResponse, NoMembershipGivesZeroRow) {
  const auto r = channel(2, 3, 1);
  ScenarioConfig c;
  c.num_uus = 2;
  c.num_subbands = 3;
  const std::vector<double> mu{0.1, 0.1, 0.1}, lam{0, 0, 0};
  const auto br = best_response(0, mu, lam, r, c);
  EXPECT_EQ(br.power, (std::vector<double>{0, 0, 0}));
  EXPECT_EQ(br.payoff, 0.0);
}

TEST(BestResponse, SingleSubbandIsCappedWaterfill) {
  const auto r = channel(1, 1, 3);
  ScenarioConfig c;
  c.num_uus = 1;
  c.num_subbands = 1;
  c.power_cap = 0.7;
  for (double mu : {0.001, 0.05, 0.3, 2.0}) {
    const std::vector<double> m{mu}, l{2.5};
    const auto br = best_response(0, m, l, r, c);
    EXPECT_DOUBLE_EQ(br.power[0], std::min(0.7, waterfill_power(2.5, mu, r.macro_gain(0, 0))));
  }
}

TEST(BestResponse, MatchesConstrainedGridWhenCapSlack) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> lam(0.2, 5.0), mu(0.2, 2.0);
  ScenarioConfig c;
  c.num_uus = 1;
  c.num_subbands = 3;
  c.power_cap = 20.0;
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto r = channel(1, 3, 100 + static_cast<std::uint64_t>(trial));
    const std::vector<double> m{mu(rng), mu(rng), mu(rng)}, l{lam(rng), lam(rng), lam(rng)};
    const auto br = best_response(0, m, l, r, c);
    if (br.cap_binding) continue;
    ++checked;
    const double grid = oracle::grid_best_response(0, m, l, r, c.power_cap, 401);
    EXPECT_GE(br.payoff, grid - 1e-4);
    EXPECT_NEAR(br.payoff, uu_payoff(br.power, m, l, r.macro_gains.row(0)), 1e-12);
  }
  EXPECT_GT(checked, 10);
}

TEST(BestResponse, RowsRespectCapAndIndicator) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> lam(0.5, 20.0), mu(0.001, 0.3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = channel(1, 6, 500 + static_cast<std::uint64_t>(trial));
    ScenarioConfig c;
    c.num_uus = 1;
    c.num_subbands = 6;
    c.power_cap = 5.0;
    std::vector<double> m(6), l(6);
    for (auto& x : m) x = mu(rng);
    for (auto& x : l) x = lam(rng);
    for (bool single : {false, true}) {
      const auto br = best_response(0, m, l, r, c, single);
      double total = 0.0;
      int used = 0;
      for (std::size_t j = 0; j < 6; ++j) {
        total += br.power[j];
        EXPECT_EQ(br.indicator[j] == 1, br.power[j] > 0.0);
        used += br.indicator[j];
      }
      EXPECT_LE(total, c.power_cap + 1e-9);
      if (single) {
        EXPECT_LE(used, 1);
      }
    }
  }
}

TEST(BestResponse, ShapeErrors) {
  const auto r = channel(2, 2, 1);
  ScenarioConfig c;
  const std::vector<double> two{1, 1}, three{1, 1, 1};
  EXPECT_THROW(best_response(0, three, two, r, c), std::invalid_argument);
  EXPECT_THROW(best_response(5, two, two, r, c), std::out_of_range);
}

}  // namespace
}  // namespace hetgame
