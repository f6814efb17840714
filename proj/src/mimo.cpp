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

#include "hetgame/mimo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hetgame {

Support Support::from_mask(std::size_t subband, SupportMask mask) {
  Support s;
  s.subband = subband;
  while (mask != 0) {
    const auto k = static_cast<std::size_t>(std::countr_zero(mask));
    s.members.push_back(k);
    mask &= mask - 1;
  }
  return s;
}

SupportMask Support::mask() const {
  SupportMask m = 0;
  for (auto k : members) m |= SupportMask{1} << k;
  return m;
}

Matrix build_gain_matrix(const ChannelRealization& real, const Support& support) {
  if (support.members.empty()) throw std::invalid_argument("empty coalition");
  if (support.subband >= real.num_subbands()) throw std::out_of_range("sub-band index");
  const std::size_t n = support.members.size();
  Matrix g(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t from = support.members[a];
      const std::size_t to = support.members[b];
      g(a, b) = real.femto_gain(support.subband, from, to) / real.noise_power(support.subband, to);
    }
  }
  return g;
}

std::vector<double> jacobi_eigenvalues(Matrix a, double relative_tolerance) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("jacobi: matrix must be square");
  double total = 0.0;
  for (double v : a.data()) total += v * v;
  const double threshold = relative_tolerance * std::sqrt(total);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (p != q) s += a(p, q) * a(p, q);
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm() > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  return eig;
}

std::vector<double> gram_eigenvalues(const Matrix& gain) {
  const std::size_t n = gain.rows();
  if (n != gain.cols()) throw std::invalid_argument("gram_eigenvalues: matrix must be square");
  for (double v : gain.data()) {
    if (!std::isfinite(v)) throw std::invalid_argument("gram_eigenvalues: non-finite entry");
  }
  Matrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) s += gain(r, i) * gain(r, j);
      gram(i, j) = s;
      gram(j, i) = s;
    }
  }
  std::vector<double> eig = n == 1 ? std::vector<double>{gram(0, 0)} : jacobi_eigenvalues(gram);
  for (double& e : eig) e = std::max(e, 0.0);
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

std::vector<double> assign_payoff_division(std::span<const double> eigenvalues, const Support& support,
                                           const ChannelRealization& real) {
  const std::size_t n = support.members.size();
  if (n == 0) throw std::invalid_argument("empty coalition");
  if (eigenvalues.size() < n) throw std::invalid_argument("fewer eigenvalues than coalition members");

  std::vector<double> ascending(eigenvalues.begin(), eigenvalues.end());
  std::sort(ascending.begin(), ascending.end());

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t m = support.subband;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const std::size_t ka = support.members[a];
    const std::size_t kb = support.members[b];
    const double ga = real.femto_gain(m, ka, ka);
    const double gb = real.femto_gain(m, kb, kb);
    if (ga != gb) return ga < gb;
    return ka < kb;
  });

  // With more eigenvalues than members, the largest ones are the candidates.
  const std::size_t offset = ascending.size() - n;
  std::vector<double> lambda(n);
  for (std::size_t rank = 0; rank < n; ++rank) lambda[order[rank]] = ascending[offset + rank];
  return lambda;
}

std::vector<double> payoff_division_for(const ChannelRealization& real, const Support& support) {
  const auto eig = gram_eigenvalues(build_gain_matrix(real, support));
  return assign_payoff_division(eig, support, real);
}

PayoffDivisionCache::PayoffDivisionCache(const ChannelRealization& real)
    : real_(&real), per_subband_(real.num_subbands()) {
  if (real.num_uus() <= kDenseLimit) {
    dense_.assign(real.num_subbands(), std::vector<std::vector<double>>(std::size_t{1} << real.num_uus()));
  }
}

const std::vector<double>& PayoffDivisionCache::division(std::size_t subband, SupportMask mask) {
  if (subband >= per_subband_.size()) throw std::out_of_range("PayoffDivisionCache: sub-band index");
  if (!dense_.empty()) {
    auto& slot = dense_[subband][mask];
    if (slot.empty()) {
      slot = payoff_division_for(*real_, Support::from_mask(subband, mask));
      ++dense_count_;
    }
    return slot;
  }
  auto& table = per_subband_[subband];
  if (auto it = table.find(mask); it != table.end()) return it->second;
  auto [it, _] = table.emplace(mask, payoff_division_for(*real_, Support::from_mask(subband, mask)));
  return it->second;
}

double PayoffDivisionCache::lambda_of(std::size_t subband, SupportMask mask, std::size_t k) {
  const SupportMask bit = SupportMask{1} << k;
  if ((mask & bit) == 0) throw std::invalid_argument("UU is not a member of the coalition");
  const auto& div = division(subband, mask);
  return div[static_cast<std::size_t>(std::popcount(mask & (bit - 1)))];
}

std::size_t PayoffDivisionCache::size() const {
  std::size_t n = dense_count_;
  for (const auto& t : per_subband_) n += t.size();
  return n;
}

double max_attainable_lambda(const ChannelRealization& real) {
  const std::size_t num_uus = real.num_uus();
  Support all;
  all.members.resize(num_uus);
  std::iota(all.members.begin(), all.members.end(), std::size_t{0});
  double best = 0.0;
  for (std::size_t m = 0; m < real.num_subbands(); ++m) {
    all.subband = m;
    best = std::max(best, gram_eigenvalues(build_gain_matrix(real, all)).front());
  }
  return best;
}

}  // namespace hetgame
