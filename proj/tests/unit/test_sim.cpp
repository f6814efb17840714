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
#include <sstream>

#include "hetgame/sim.hpp"

namespace hetgame {
namespace {

ScenarioConfig small_config(std::size_t k, std::size_t m, std::uint64_t seed) {
  ScenarioConfig c;
  c.num_uus = k;
  c.num_subbands = m;
  c.seed = seed;
  return c;
}

void expect_all_zero(const EquilibriumOutcome& o) {
  for (double p : o.structure.power.data()) EXPECT_EQ(p, 0.0);
  for (double v : o.uu_payoffs) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(o.mco_payoff, 0.0);
}

TEST(RunHierarchical, ZeroInterferenceCapGivesZeroOutcome) {
  auto c = small_config(3, 2, 1);
  c.interference_cap = 0.0;
  const auto o = run_hierarchical(c);
  expect_all_zero(o);
  EXPECT_TRUE(o.prices_terminated);
  EXPECT_TRUE(o.interference_feasible);
}

TEST(RunHierarchical, ZeroPowerCapGivesZeroOutcome) {
  auto c = small_config(3, 2, 1);
  c.power_cap = 0.0;
  const auto o = run_hierarchical(c);
  expect_all_zero(o);
  EXPECT_TRUE(o.converged);
  for (double mu : o.prices) EXPECT_LE(mu, kPriceFloor);
}

TEST(RunHierarchical, ShapeMismatchRejected) {
  const auto c = small_config(3, 2, 1);
  const auto real = generate_channel(small_config(2, 2, 1));
  EXPECT_THROW(run_hierarchical(c, real), std::invalid_argument);
}

TEST(RunHierarchical, TerminatesWithinGeometricBound) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto o = run_hierarchical(small_config(3, 3, seed));
    EXPECT_TRUE(o.prices_terminated);
    EXPECT_LE(o.outer_iterations, o.iteration_bound);
    EXPECT_EQ(o.iteration_bound, price_iteration_bound(o.start_price, o.config.epsilon));
  }
}

TEST(RunHierarchical, ConvergedOutcomesAreFeasibleEquilibria) {
  int converged = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto c = small_config(3, 2, seed);
    const auto real = generate_channel(c);
    const auto o = run_hierarchical(c, real);
    if (!o.converged) continue;
    ++converged;
    for (double q : o.interference) EXPECT_LE(q, c.interference_cap * (1 + 1e-12));
    for (std::size_t k = 0; k < 3; ++k) {
      double total = 0.0;
      for (std::size_t m = 0; m < 2; ++m) total += o.structure.power(k, m);
      EXPECT_LE(total, c.power_cap + 1e-9);
    }
    EXPECT_LE(max_unilateral_gain(o, real), c.tolerance);
  }
  EXPECT_GT(converged, 5);
}

TEST(RunHierarchical, PayoffsMatchStructure) {
  const auto c = small_config(4, 3, 9);
  const auto real = generate_channel(c);
  const auto o = run_hierarchical(c, real);
  EXPECT_NEAR(o.mco_payoff, mco_revenue(o.structure.power, o.prices, real), 1e-12);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(o.uu_payoffs[k],
                uu_payoff(o.structure.power.row(k), o.prices, o.structure.lambda.row(k), real.macro_gains.row(k)),
                1e-12);
  }
  const auto q = aggregate_interference(o.structure.power, real);
  for (std::size_t m = 0; m < 3; ++m) EXPECT_NEAR(o.interference[m], q[m], 1e-15);
}

TEST(RunHierarchical, DeterministicIncludingTrace) {
  const auto c = small_config(4, 3, 21);
  std::ostringstream a, b;
  RunOptions oa, ob;
  oa.trace = &a;
  ob.trace = &b;
  const auto x = run_hierarchical(c, oa);
  const auto y = run_hierarchical(c, ob);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_FALSE(a.str().empty());
  EXPECT_EQ(x.prices, y.prices);
  EXPECT_EQ(x.structure.power, y.structure.power);
  EXPECT_EQ(x.uu_payoffs, y.uu_payoffs);
  EXPECT_EQ(x.messages_total, y.messages_total);
}

TEST(RunHierarchical, OuterBudgetExhaustion) {
  auto c = small_config(3, 2, 4);
  c.max_outer_iters = 5;
  const auto o = run_hierarchical(c);
  EXPECT_FALSE(o.prices_terminated);
  EXPECT_FALSE(o.converged);
  EXPECT_EQ(o.outer_iterations, 5u);
}

TEST(CfBaseline, SingleUserSingleSubbandMatchesOcf) {
  const auto c = small_config(1, 1, 8);
  const auto a = run_hierarchical(c);
  const auto b = run_cf_baseline(c);
  EXPECT_EQ(a.prices, b.prices);
  EXPECT_EQ(a.structure.power, b.structure.power);
  EXPECT_EQ(a.uu_payoffs, b.uu_payoffs);
}

TEST(CfBaseline, AtMostOneSubbandPerUu) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto o = run_cf_baseline(small_config(4, 4, seed));
    for (std::size_t k = 0; k < 4; ++k) {
      int used = 0;
      for (std::size_t m = 0; m < 4; ++m) used += o.structure.power(k, m) > 0.0;
      EXPECT_LE(used, 1);
    }
  }
}

TEST(Overhead, WorstCaseFormula) {
  EXPECT_EQ(worst_case_control_bits(1, 5, 8.0), 8.0);
  EXPECT_EQ(worst_case_control_bits(3, 2, 1.0), 7.0 * 2 * 3 * 2 + 7);
  EXPECT_EQ(discovery_messages(1), 1u);
  EXPECT_EQ(discovery_messages(4), 10u);
}

TEST(Overhead, TimeOverheads) {
  OverheadInputs in;
  in.num_uus = 4;
  in.num_subbands = 2;
  in.outer_iterations = 100;
  const auto r = overhead_report(in, 1.0, 1.0, 900.0);
  EXPECT_DOUBLE_EQ(r.time_overhead_measured, 0.1);
  EXPECT_DOUBLE_EQ(r.time_overhead_paper, 900.0 / 904.0);
  EXPECT_EQ(r.complexity_bound, 3u * 4u * 2u);
}

TEST(Overhead, RejectsNonPositiveInputs) {
  const OverheadInputs in;
  EXPECT_THROW(overhead_report(in, 0.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(overhead_report(in, 1.0, -1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(overhead_report(in, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST(Overhead, MeasuredCountsFromRun) {
  const auto o = run_hierarchical(small_config(3, 2, 3));
  const auto r = overhead_report(o, 8.0, 1.0, 100.0);
  EXPECT_EQ(r.control_bits, 8.0 * static_cast<double>(o.max_formation_messages));
  EXPECT_EQ(r.control_bits_total, 8.0 * static_cast<double>(o.messages_total));
  EXPECT_GE(o.max_formation_messages, discovery_messages(3));
  EXPECT_LE(r.complexity_ops, r.complexity_bound);
}

TEST(Summary, ColumnsAndValuesAlign) {
  const auto o = run_hierarchical(small_config(2, 2, 3));
  const auto cols = summary_columns();
  const auto vals = summary_values(o, "7", "OCF");
  ASSERT_EQ(cols.size(), vals.size());
  EXPECT_EQ(cols[0], "run_id");
  EXPECT_EQ(vals[0], "7");
  EXPECT_EQ(vals[1], "OCF");
}

TEST(Freezes, ConvergedSmallRunsStopForAReason) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto c = small_config(2, 2, seed);
    const auto real = generate_channel(c);
    const auto o = run_hierarchical(c, real);
    if (!o.converged) continue;
    ++checked;
    EXPECT_TRUE(unjustified_freezes(o, real).empty()) << "seed " << seed;
  }
  EXPECT_GT(checked, 5);
}

}  // namespace
}  // namespace hetgame
