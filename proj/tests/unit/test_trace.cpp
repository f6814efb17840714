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

#include <cstdlib>
#include <map>
#include <sstream>

#include "hetgame/sim.hpp"
#include "hetgame/trace.hpp"

namespace hetgame {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

TEST(Trace, Columns) {
  const std::vector<std::string> want{"run_id", "phase", "t_outer",      "t_inner", "subband", "uu",
                                      "mu",     "power", "lambda", "interference", "payoff",  "frozen_flag"};
  EXPECT_EQ(trace_columns(), want);
}

TEST(Trace, NumbersRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.123456789, 0.0}) {
    EXPECT_EQ(std::strtod(format_number(x).c_str(), nullptr), x);
  }
}

TEST(Trace, NullStreamWritesNothing) {
  TraceWriter w(nullptr, "1");
  EXPECT_FALSE(w.enabled());
  EXPECT_NO_THROW(w.header());
}

TEST(Trace, RowsMatchTheRun) {
  ScenarioConfig c;
  c.num_uus = 3;
  c.num_subbands = 2;
  c.seed = 5;
  std::ostringstream out;
  RunOptions opts;
  opts.trace = &out;
  opts.run_id = "r5";
  const auto o = run_hierarchical(c, opts);

  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(split(line), trace_columns());
  std::map<std::string, std::size_t> rows;
  std::size_t max_t = 0;
  std::vector<double> last_mu(2, -1.0);
  while (std::getline(in, line)) {
    const auto cells = split(line);
    ASSERT_EQ(cells.size(), trace_columns().size()) << line;
    EXPECT_EQ(cells[0], "r5");
    ++rows[cells[1]];
    if (cells[1] == "price") {
      max_t = std::max<std::size_t>(max_t, std::stoul(cells[2]));
      last_mu[std::stoul(cells[4])] = std::strtod(cells[6].c_str(), nullptr);
    }
  }
  EXPECT_EQ(rows["price"], (o.outer_iterations + 1) * 2);
  EXPECT_EQ(max_t, o.outer_iterations);
  EXPECT_EQ(rows["final"], 3u * 2u);
  EXPECT_EQ(last_mu, o.prices);
  EXPECT_EQ(rows.size(), rows.count("coalition") ? 3u : 2u);
}

TEST(Trace, PriceTrajectoryIsGeometricThenFlat) {
  ScenarioConfig c;
  c.num_uus = 4;
  c.num_subbands = 3;
  c.seed = 2;
  std::ostringstream out;
  RunOptions opts;
  opts.trace = &out;
  run_hierarchical(c, opts);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> mu(3);
  while (std::getline(in, line)) {
    const auto cells = split(line);
    if (cells[1] != "price") continue;
    mu[std::stoul(cells[4])].push_back(std::strtod(cells[6].c_str(), nullptr));
  }
  for (const auto& series : mu) {
    ASSERT_GT(series.size(), 2u);
    bool flat = false;
    for (std::size_t t = 1; t < series.size(); ++t) {
      if (flat) {
        EXPECT_EQ(series[t], series[t - 1]);
      } else if (series[t] != (1 - c.epsilon) * series[t - 1]) {
        // First departure from the geometric path is the freeze.
        EXPECT_GE(series[t], series[t - 1]);
        flat = true;
      }
    }
  }
}

}  // namespace
}  // namespace hetgame
