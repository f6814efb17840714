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

#include <filesystem>
#include <fstream>

#include "hetgame/config.hpp"

namespace hetgame {
namespace {

TEST(Config, DefaultsValidate) { EXPECT_NO_THROW(ScenarioConfig{}.validate()); }

TEST(Config, RejectsDegenerateFields) {
  auto bad = [](auto mutate) {
    ScenarioConfig c;
    mutate(c);
    return c;
  };
  EXPECT_THROW(bad([](ScenarioConfig& c) { c.fading_scale = 0.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](ScenarioConfig& c) { c.num_uus = 0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](ScenarioConfig& c) { c.num_uus = 65; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](ScenarioConfig& c) { c.num_subbands = 0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](ScenarioConfig& c) { c.epsilon = 1.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](ScenarioConfig& c) { c.power_cap = -1.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](ScenarioConfig& c) { c.noise_floor = 0.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](ScenarioConfig& c) { c.tolerance = 0.0; }).validate(), std::invalid_argument);
}

TEST(Config, ZeroCapsAreValid) {
  ScenarioConfig c;
  c.power_cap = 0.0;
  c.interference_cap = 0.0;
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, UnknownKeyListsEveryValidKey) {
  ScenarioConfig c;
  try {
    apply_config_value(c, "bogus", "1");
    FAIL() << "no exception";
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("bogus"), std::string::npos);
    for (const auto& key : config_keys()) EXPECT_NE(msg.find(key), std::string::npos) << key;
  }
}

TEST(Config, MalformedValuesThrow) {
  ScenarioConfig c;
  EXPECT_THROW(apply_config_value(c, "num_uus", "three"), std::invalid_argument);
  EXPECT_THROW(apply_config_value(c, "num_uus", "-3"), std::invalid_argument);
  EXPECT_THROW(apply_config_value(c, "epsilon", "0.1x"), std::invalid_argument);
}

TEST(Config, ParseIgnoresCommentsAndBlankLines) {
  const auto c = parse_config("# scenario\n\nnum_uus = 3\nnum_subbands=2\n  power_cap=10 # watts\n");
  EXPECT_EQ(c.num_uus, 3u);
  EXPECT_EQ(c.num_subbands, 2u);
  EXPECT_DOUBLE_EQ(c.power_cap, 10.0);
}

TEST(Config, ParseRejectsLineWithoutEquals) { EXPECT_THROW(parse_config("num_uus 3\n"), std::invalid_argument); }

TEST(Config, FormatRoundTrips) {
  ScenarioConfig c;
  c.num_uus = 5;
  c.power_cap = 12.345678901234567;
  c.epsilon = 0.02;
  c.seed = 18446744073709551615ull;
  EXPECT_EQ(parse_config(format_config(c)), c);
}

TEST(Config, FieldsFollowKeyOrder) {
  const auto fields = config_fields(ScenarioConfig{});
  ASSERT_EQ(fields.size(), config_keys().size());
  for (std::size_t i = 0; i < fields.size(); ++i) EXPECT_EQ(fields[i].first, config_keys()[i]);
}

TEST(Config, MissingFileNamesThePath) {
  try {
    load_config("definitely_missing.cfg");
    FAIL() << "no exception";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("definitely_missing.cfg"), std::string::npos);
  }
}

TEST(Config, LoadsFile) {
  const auto path = std::filesystem::temp_directory_path() / "hetgame_test_config.cfg";
  {
    std::ofstream out(path);
    out << "num_uus=4\ninterference_cap=7.5\n";
  }
  const auto c = load_config(path);
  EXPECT_EQ(c.num_uus, 4u);
  EXPECT_DOUBLE_EQ(c.interference_cap, 7.5);
  std::filesystem::remove(path);
}

TEST(Config, InnerRoundLimitDefault) {
  ScenarioConfig c;
  EXPECT_EQ(c.inner_round_limit(), 64u);
  c.max_inner_iters = 5;
  EXPECT_EQ(c.inner_round_limit(), 5u);
}

}  // namespace
}  // namespace hetgame
