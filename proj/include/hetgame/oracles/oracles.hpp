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

// Brute-force reference implementations. Deliberately simple and slow; they
// share no search code with the library they check.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hetgame/channel.hpp"
#include "hetgame/config.hpp"
#include "hetgame/follower.hpp"
#include "hetgame/matrix.hpp"
#include "hetgame/ocf.hpp"

namespace hetgame::oracle {

struct GridOptimum {
  double power = 0.0;
  double payoff = 0.0;
};

/// Maximizes log(1 + lambda p) - mu h p over p in {0, step, 2 step, ...} up
/// to `upper` (inclusive, last point clamped).
GridOptimum grid_waterfill(double lambda, double mu, double h, double upper, double step);

struct SubsetOptimum {
  std::vector<std::size_t> subset;  // ascending
  double payoff = 0.0;
};

/// Enumerates every subset (2^M) of the positive-payoff items that fits the
/// cap, summing in ascending index order; ties go to the lexicographically
/// smallest subset. `max_size` limits the subset size.
SubsetOptimum enumerate_subsets(std::span<const double> power, std::span<const double> payoff, double cap,
                                std::size_t max_size = SIZE_MAX);

/// Best total payoff of UU k over rows whose entries lie on a `points`-point
/// grid of [0, cap] per sub-band and whose total fits the cap. O(points^M).
double grid_best_response(std::size_t k, std::span<const double> mu, std::span<const double> lambda_row,
                          const ChannelRealization& real, double cap, std::size_t points);

/// Eigenvalues of a symmetric matrix: Householder tridiagonalization, then
/// Sturm-count bisection between Gershgorin bounds. Small n only (n <= 6).
std::vector<double> symmetric_eigenvalues_by_bisection(const Matrix& a);

/// Determinant by Gaussian elimination with partial pivoting.
double determinant(Matrix a);

/// Best payoff UU k could get by a unilateral row change on a `points`-point
/// grid per sub-band: joining sub-band m earns the division it would get in
/// the enlarged coalition. Compare against the UU's current payoff.
double best_unilateral_deviation(const CoalitionStructure& s, std::size_t k, std::span<const double> mu,
                                 const ChannelRealization& real, const ScenarioConfig& config, std::size_t points);

struct SubsetDeviation {
  double payoff = 0.0;  // best total over feasible band subsets
  double demand = 0.0;  // total water-filled power over positive-payoff bands
};

/// Best payoff UU k could get by a unilateral row change within the
/// subset strategy class: any set of sub-bands, each at its own water-filled
/// power (clipped at the cap), total within the cap. Enumerates all 2^M sets.
/// When `demand` fits the cap this class contains the grid optimum.
SubsetDeviation best_subset_deviation(const CoalitionStructure& s, std::size_t k, std::span<const double> mu,
                                      const ChannelRealization& real, const ScenarioConfig& config);

/// Grid deviation when the cap is slack for k, subset deviation otherwise.
double best_deviation(const CoalitionStructure& s, std::size_t k, std::span<const double> mu,
                      const ChannelRealization& real, const ScenarioConfig& config, std::size_t points);

/// core_check by full enumeration of the (points-1)^|S| member grid instead
/// of the monotone shortcut. Small K only.
bool core_blocked_by_enumeration(const CoalitionStructure& outcome, std::span<const double> mu,
                                 const ChannelRealization& real, const ScenarioConfig& config,
                                 std::size_t points = kCoreGridPoints);

}  // namespace hetgame::oracle
