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
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace hetgame {

/// Parameters of one simulated time slot and of the game dynamics.
///
/// A config is only usable after validate() succeeds; every public entry
/// point that accepts a config validates it first.
struct ScenarioConfig {
  std::size_t num_uus = 8;                 // K
  std::size_t num_subbands = 8;            // M
  double power_cap = 50.0;                 // per-device total power
  double interference_cap = 2.0;           // tolerable interference per sub-band
  double epsilon = 0.01;                   // price decay factor
  std::uint64_t seed = 1;
  double noise_floor = 1.0;
  double fading_scale = 1.0;               // mean of the exponential power gain
  std::size_t max_outer_iters = 0;         // 0: ten times the geometric-descent bound
  std::size_t max_inner_iters = 0;         // 0: 64 negotiation rounds
  std::size_t subset_exact_threshold = 15; // exact subset search up to this many sub-bands
  double tolerance = 1e-6;                 // payoff improvement threshold

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  std::size_t inner_round_limit() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Largest supported K; supports are stored as 64-bit masks.
inline constexpr std::size_t kMaxUus = 64;

/// Keys accepted in config files and --override flags, in canonical order.
const std::vector<std::string>& config_keys();

/// Sets one field from its textual form. Unknown keys and malformed values
/// throw std::invalid_argument; the unknown-key message lists every valid key.
void apply_config_value(ScenarioConfig& config, const std::string& key, const std::string& value);

/// Parses `key=value` lines. Blank lines and `#` comments are ignored.
ScenarioConfig parse_config(const std::string& text, ScenarioConfig base = {});

/// Reads and parses a config file; a missing file throws std::runtime_error
/// whose message names the path.
ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base = {});

/// Canonical key=value rendering, one key per line, in config_keys() order.
std::string format_config(const ScenarioConfig& config);

/// Ordered key -> value text, for CSV echo.
std::vector<std::pair<std::string, std::string>> config_fields(const ScenarioConfig& config);

}  // namespace hetgame
