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
#include <span>
#include <vector>

namespace hetgame {

double mean(std::span<const double> xs);

/// Sample standard deviation over sqrt(n); 0 for fewer than two values.
double standard_error(std::span<const double> xs);

/// Ranks starting at 1; ties share their average rank.
std::vector<double> average_ranks(std::span<const double> xs);

/// Spearman rank correlation (Pearson on average ranks). NaN when either
/// side is constant. Throws std::invalid_argument on length mismatch or n < 2.
double spearman(std::span<const double> xs, std::span<const double> ys);

struct SignTest {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t ties = 0;
  double p_value = 1.0;  // P(X >= positive), X ~ Binomial(positive + negative, 1/2)
};

/// One-sided exact sign test of "a tends to exceed b" over paired samples.
SignTest sign_test_greater(std::span<const double> a, std::span<const double> b);

}  // namespace hetgame
