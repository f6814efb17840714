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
#include <string>
#include <vector>

#include "hetgame/config.hpp"

namespace hetgame {

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t num_uus = 3;
  std::size_t num_subbands = 2;
  ScenarioConfig base;  // power and interference caps, eps, tolerance
};

/// Oracle suite at small scale: core membership of the equilibrium, price
/// bracketing against the bisection oracle, subset search against
/// enumeration, support-count bound, and the equilibrium certificate.
/// Throws std::invalid_argument when K > 5 or M > 4.
std::vector<PropertyResult> run_verification(const VerifyOptions& options);

}  // namespace hetgame
