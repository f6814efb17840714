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
#include <span>
#include <unordered_map>
#include <vector>

#include "hetgame/channel.hpp"
#include "hetgame/matrix.hpp"

namespace hetgame {

/// Bit k set <=> UU k belongs to the coalition. K <= 64.
using SupportMask = std::uint64_t;

/// The set of UUs sharing one sub-band, in ascending index order.
struct Support {
  std::size_t subband = 0;
  std::vector<std::size_t> members;

  static Support from_mask(std::size_t subband, SupportMask mask);
  SupportMask mask() const;
  bool empty() const { return members.empty(); }
};

/// Normalized gain matrix of the coalition: entry (j, k) = g'(j -> k) / sigma_k,
/// rows and columns in member order. Throws on an empty support.
Matrix build_gain_matrix(const ChannelRealization& real, const Support& support);

/// Eigenvalues of G^T G, clamped to >= 0 and sorted descending.
///
/// Cyclic Jacobi rotations on the symmetric Gram matrix, swept until the
/// off-diagonal Frobenius norm drops below 1e-10 of the full norm.
std::vector<double> gram_eigenvalues(const Matrix& gain);

/// Symmetric eigenvalues (unsorted, unclamped) of a symmetric matrix.
std::vector<double> jacobi_eigenvalues(Matrix a, double relative_tolerance = 1e-10);

/// Member ranked r-th by ascending direct gain g'(k -> k) receives the r-th
/// smallest eigenvalue; gain ties go to the lower UU index first. Result is
/// aligned with `support.members`.
std::vector<double> assign_payoff_division(std::span<const double> eigenvalues,
                                           const Support& support,
                                           const ChannelRealization& real);

/// Builds the gain matrix, decomposes it and ranks the members in one call.
std::vector<double> payoff_division_for(const ChannelRealization& real, const Support& support);

/// Memoizes payoff divisions per (sub-band, support). Channel gains are
/// constant within a slot so a division never changes once computed.
/// Not thread-safe; use one cache per run.
class PayoffDivisionCache {
 public:
  explicit PayoffDivisionCache(const ChannelRealization& real);

  /// Divisions aligned with ascending members of `mask`.
  const std::vector<double>& division(std::size_t subband, SupportMask mask);

  /// lambda of UU `k` inside coalition `mask` (which must contain k).
  double lambda_of(std::size_t subband, SupportMask mask, std::size_t k);

  const ChannelRealization& channel() const { return *real_; }
  std::size_t size() const;

 private:
  static constexpr std::size_t kDenseLimit = 12;  // flat tables up to 2^12 supports per sub-band

  const ChannelRealization* real_;
  std::vector<std::unordered_map<SupportMask, std::vector<double>>> per_subband_;
  std::vector<std::vector<std::vector<double>>> dense_;
  std::size_t dense_count_ = 0;
};

/// Largest eigenvalue any coalition on any sub-band can be assigned. The
/// Gram matrix of a sub-coalition is built from a principal submatrix of the
/// full gain matrix, so its spectral norm never exceeds the full one.
double max_attainable_lambda(const ChannelRealization& real);

}  // namespace hetgame
