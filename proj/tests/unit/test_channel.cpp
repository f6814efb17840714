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
#include <sstream>

#include "hetgame/channel.hpp"

namespace hetgame {
namespace {

TEST(Channel, SameSeedSameRealization) {
  ScenarioConfig c;
  c.num_uus = 1;
  c.num_subbands = 1;
  c.seed = 99;
  const auto a = generate_channel(c);
  const auto b = generate_channel(c);
  EXPECT_EQ(a.macro_gains, b.macro_gains);
  EXPECT_EQ(a.femto_gains, b.femto_gains);
  EXPECT_EQ(a.noise, b.noise);
}

TEST(Channel, DifferentSeedsDiffer) {
  ScenarioConfig c;
  const auto a = generate_channel(c);
  c.seed = 2;
  EXPECT_NE(a.macro_gains, generate_channel(c).macro_gains);
}

TEST(Channel, ShapesAndNoiseFloor) {
  ScenarioConfig c;
  c.num_uus = 3;
  c.num_subbands = 4;
  c.noise_floor = 0.5;
  const auto r = generate_channel(c);
  EXPECT_EQ(r.num_uus(), 3u);
  EXPECT_EQ(r.num_subbands(), 4u);
  ASSERT_EQ(r.femto_gains.size(), 4u);
  for (const auto& g : r.femto_gains) {
    EXPECT_EQ(g.rows(), 3u);
    EXPECT_EQ(g.cols(), 3u);
  }
  for (std::size_t m = 0; m < 4; ++m) {
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(r.noise_power(m, k), 0.5);
  }
  EXPECT_NO_THROW(r.validate());
}

TEST(Channel, InvalidConfigRejected) {
  ScenarioConfig c;
  c.fading_scale = 0.0;
  EXPECT_THROW(generate_channel(c), std::invalid_argument);
}

TEST(Channel, ExponentialMeanWithinTwoPercent) {
  std::mt19937_64 rng(2024);
  const double scale = 1.7;
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double x = exponential_fading(rng, scale);
    ASSERT_GE(x, 0.0);
    ASSERT_TRUE(std::isfinite(x));
    sum += x;
  }
  EXPECT_NEAR(sum / n, scale, 0.02 * scale);
}

TEST(Channel, GeneratedGainMeanMatchesFadingScale) {
  ScenarioConfig c;
  c.num_uus = 50;
  c.num_subbands = 40;
  c.fading_scale = 2.5;
  const auto r = generate_channel(c);
  double sum = 0.0;
  std::size_t n = 0;
  for (double h : r.macro_gains.data()) sum += h, ++n;
  for (const auto& g : r.femto_gains) {
    for (double v : g.data()) sum += v, ++n;
  }
  ASSERT_GE(n, 100000u);
  EXPECT_NEAR(sum / static_cast<double>(n), 2.5, 0.02 * 2.5);
}

TEST(Channel, PluggableSampler) {
  ScenarioConfig c;
  c.num_uus = 2;
  c.num_subbands = 2;
  const auto r = generate_channel(c, [](std::mt19937_64&, double mean) { return 3.0 * mean; });
  for (double h : r.macro_gains.data()) EXPECT_EQ(h, 3.0);
}

TEST(Channel, ValidateRejectsBadValues) {
  ScenarioConfig c;
  c.num_uus = 2;
  c.num_subbands = 2;
  auto r = generate_channel(c);
  auto bad = r;
  bad.noise(0, 0) = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = r;
  bad.macro_gains(1, 1) = -1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = r;
  bad.femto_gains[0](0, 1) = std::nan("");
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = r;
  bad.femto_gains.pop_back();
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Channel, CsvHasOneRowPerUuSubband) {
  ScenarioConfig c;
  c.num_uus = 3;
  c.num_subbands = 2;
  std::ostringstream out;
  write_channel_csv(out, generate_channel(c));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "uu,subband,h,g_0,g_1,g_2,sigma");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 6);
}

}  // namespace
}  // namespace hetgame
