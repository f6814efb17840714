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

#include "hetgame/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hetgame {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_integer(const std::string& key, const std::string& text) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("invalid integer for '" + key + "': '" + text + "'");
  }
  return value;
}

double parse_real(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument("invalid number for '" + key + "': '" + text + "'");
  }
  return value;
}

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("invalid config: " + what); };
  if (num_uus < 1) fail("num_uus must be >= 1");
  if (num_uus > kMaxUus) fail("num_uus must be <= 64");
  if (num_subbands < 1) fail("num_subbands must be >= 1");
  if (!(power_cap >= 0.0) || !std::isfinite(power_cap)) fail("power_cap must be finite and >= 0");
  if (!(interference_cap >= 0.0) || !std::isfinite(interference_cap)) {
    fail("interference_cap must be finite and >= 0");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) fail("epsilon must lie in (0, 1)");
  if (!(noise_floor > 0.0) || !std::isfinite(noise_floor)) fail("noise_floor must be > 0");
  if (!(fading_scale > 0.0) || !std::isfinite(fading_scale)) fail("fading_scale must be > 0");
  if (subset_exact_threshold < 1) fail("subset_exact_threshold must be >= 1");
  if (subset_exact_threshold > 30) fail("subset_exact_threshold must be <= 30");
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) fail("tolerance must be > 0");
}

std::size_t ScenarioConfig::inner_round_limit() const {
  return max_inner_iters != 0 ? max_inner_iters : 64;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "num_uus",        "num_subbands",    "power_cap",      "interference_cap",
      "epsilon",        "seed",            "noise_floor",    "fading_scale",
      "max_outer_iters", "max_inner_iters", "subset_exact_threshold", "tolerance"};
  return keys;
}

void apply_config_value(ScenarioConfig& c, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "num_uus") {
    c.num_uus = parse_integer<std::size_t>(key, value);
  } else if (key == "num_subbands") {
    c.num_subbands = parse_integer<std::size_t>(key, value);
  } else if (key == "power_cap") {
    c.power_cap = parse_real(key, value);
  } else if (key == "interference_cap") {
    c.interference_cap = parse_real(key, value);
  } else if (key == "epsilon") {
    c.epsilon = parse_real(key, value);
  } else if (key == "seed") {
    c.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "noise_floor") {
    c.noise_floor = parse_real(key, value);
  } else if (key == "fading_scale") {
    c.fading_scale = parse_real(key, value);
  } else if (key == "max_outer_iters") {
    c.max_outer_iters = parse_integer<std::size_t>(key, value);
  } else if (key == "max_inner_iters") {
    c.max_inner_iters = parse_integer<std::size_t>(key, value);
  } else if (key == "subset_exact_threshold") {
    c.subset_exact_threshold = parse_integer<std::size_t>(key, value);
  } else if (key == "tolerance") {
    c.tolerance = parse_real(key, value);
  } else {
    std::string msg = "unknown config key '" + key + "'; valid keys:";
    for (const auto& k : config_keys()) msg += " " + k;
    throw std::invalid_argument(msg);
  }
}

ScenarioConfig parse_config(const std::string& text, ScenarioConfig base) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key=value");
    }
    apply_config_value(base, line.substr(0, eq), line.substr(eq + 1));
  }
  base.validate();
  return base;
}

ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

std::vector<std::pair<std::string, std::string>> config_fields(const ScenarioConfig& c) {
  return {
      {"num_uus", std::to_string(c.num_uus)},
      {"num_subbands", std::to_string(c.num_subbands)},
      {"power_cap", format_real(c.power_cap)},
      {"interference_cap", format_real(c.interference_cap)},
      {"epsilon", format_real(c.epsilon)},
      {"seed", std::to_string(c.seed)},
      {"noise_floor", format_real(c.noise_floor)},
      {"fading_scale", format_real(c.fading_scale)},
      {"max_outer_iters", std::to_string(c.max_outer_iters)},
      {"max_inner_iters", std::to_string(c.max_inner_iters)},
      {"subset_exact_threshold", std::to_string(c.subset_exact_threshold)},
      {"tolerance", format_real(c.tolerance)},
  };
}

std::string format_config(const ScenarioConfig& c) {
  std::string out;
  for (const auto& [k, v] : config_fields(c)) out += k + "=" + v + "\n";
  return out;
}

}  // namespace hetgame
