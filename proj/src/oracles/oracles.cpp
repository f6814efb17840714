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

#include "hetgame/oracles/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hetgame/mimo.hpp"

namespace hetgame::oracle {

GridOptimum grid_waterfill(double lambda, double mu, double h, double upper, double step) {
  if (!(step > 0.0) || !(upper >= 0.0)) throw std::invalid_argument("grid_waterfill: bad grid");
  GridOptimum best;
  const auto n = static_cast<std::size_t>(std::ceil(upper / step));
  for (std::size_t i = 0; i <= n; ++i) {
    const double p = std::min(upper, static_cast<double>(i) * step);
    const double v = std::log1p(lambda * p) - mu * h * p;
    if (v > best.payoff) best = {p, v};
  }
  return best;
}

SubsetOptimum enumerate_subsets(std::span<const double> power, std::span<const double> payoff, double cap,
                                std::size_t max_size) {
  const std::size_t n = power.size();
  if (n > 24) throw std::invalid_argument("enumerate_subsets: too many items");
  SubsetOptimum best;
  bool have = false;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::size_t> subset;
    bool usable = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        if (!(payoff[i] > 0.0) || !(power[i] > 0.0)) usable = false;
        subset.push_back(i);
      }
    }
    if (!usable || subset.size() > max_size) continue;
    double total_power = 0.0;
    double total_payoff = 0.0;
    for (auto i : subset) {
      total_power += power[i];
      total_payoff += payoff[i];
    }
    if (total_power > cap) continue;
    if (!have || total_payoff > best.payoff ||
        (total_payoff == best.payoff && std::lexicographical_compare(subset.begin(), subset.end(),
                                                                     best.subset.begin(), best.subset.end()))) {
      best = {subset, total_payoff};
      have = true;
    }
  }
  return best;
}

double grid_best_response(std::size_t k, std::span<const double> mu, std::span<const double> lambda_row,
                          const ChannelRealization& real, double cap, std::size_t points) {
  const std::size_t m_count = mu.size();
  if (points < 2) throw std::invalid_argument("grid_best_response: need >= 2 points");
  // Per-band payoff at every grid point, then an odometer over the grid.
  std::vector<std::vector<double>> value(m_count, std::vector<double>(points, 0.0));
  std::vector<double> level(points);
  for (std::size_t i = 0; i < points; ++i) level[i] = cap * static_cast<double>(i) / static_cast<double>(points - 1);
  for (std::size_t m = 0; m < m_count; ++m) {
    for (std::size_t i = 1; i < points; ++i) {
      value[m][i] = std::log1p(lambda_row[m] * level[i]) - mu[m] * real.macro_gain(k, m) * level[i];
    }
  }
  std::vector<std::size_t> idx(m_count, 0);
  double best = 0.0;
  while (true) {
    double used = 0.0;
    double total = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) {
      used += level[idx[m]];
      total += value[m][idx[m]];
    }
    if (used <= cap * (1.0 + 1e-12)) best = std::max(best, total);
    std::size_t m = 0;
    while (m < m_count && ++idx[m] == points) idx[m++] = 0;
    if (m == m_count) break;
  }
  return best;
}

double determinant(Matrix a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant: not square");
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a(r, c)) > std::abs(a(pivot, c))) pivot = r;
    }
    if (a(pivot, c) == 0.0) return 0.0;
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

namespace {

struct Tridiagonal {
  std::vector<double> diag, off;  // off[i] couples rows i and i + 1
};

// Householder reduction of a symmetric matrix to tridiagonal form.
Tridiagonal tridiagonalize(Matrix a) {
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c + 2 < n; ++c) {
    double norm = 0.0;
    for (std::size_t r = c + 1; r < n; ++r) norm += a(r, c) * a(r, c);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    std::vector<double> v(n, 0.0);
    const double alpha = a(c + 1, c) > 0.0 ? -norm : norm;
    for (std::size_t r = c + 1; r < n; ++r) v[r] = a(r, c);
    v[c + 1] -= alpha;
    double vv = 0.0;
    for (double x : v) vv += x * x;
    if (vv == 0.0) continue;
    // a <- H a H with H = I - 2 v v^T / (v^T v).
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) w[i] += a(i, j) * v[j];
    }
    double vw = 0.0;
    for (std::size_t i = 0; i < n; ++i) vw += v[i] * w[i];
    const double beta = 2.0 / vv;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) += -beta * (v[i] * w[j] + w[i] * v[j]) + beta * beta * vw * v[i] * v[j];
      }
    }
  }
  Tridiagonal t;
  for (std::size_t i = 0; i < n; ++i) t.diag.push_back(a(i, i));
  for (std::size_t i = 0; i + 1 < n; ++i) t.off.push_back(a(i + 1, i));
  return t;
}

// Eigenvalues strictly below x: negative terms of the Sturm recurrence
// (Sylvester's law of inertia on the LDL^T factors of T - xI).
std::size_t count_below(const Tridiagonal& t, double x) {
  std::size_t negatives = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double e2 = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
    q = t.diag[i] - x - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++negatives;
  }
  return negatives;
}

}  // namespace

std::vector<double> symmetric_eigenvalues_by_bisection(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols() || n == 0 || n > 6) throw std::invalid_argument("bisection eigenvalues: n in [1, 6]");
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) radius += std::abs(a(i, j));
    }
    lo = std::min(lo, a(i, i) - radius);
    hi = std::max(hi, a(i, i) + radius);
  }
  lo -= 1.0;
  hi += 1.0;
  const Tridiagonal t = tridiagonalize(a);
  std::vector<double> eig(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k-th smallest: smallest x with count_below(x) > k.
    double l = lo, h = hi;
    for (int it = 0; it < 200 && h - l > 1e-15 * std::max(1.0, std::abs(h)); ++it) {
      const double mid = 0.5 * (l + h);
      if (count_below(t, mid) > k) {
        h = mid;
      } else {
        l = mid;
      }
    }
    eig[k] = 0.5 * (l + h);
  }
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

namespace {

std::vector<double> joined_lambda(const CoalitionStructure& s, std::size_t k, const ChannelRealization& real) {
  const std::size_t m_count = real.num_subbands();
  std::vector<double> lambda(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    Support with;
    with.subband = m;
    for (std::size_t j = 0; j < real.num_uus(); ++j) {
      if (j == k || s.power(j, m) > 0.0) with.members.push_back(j);
    }
    const auto div = payoff_division_for(real, with);
    const auto pos = std::find(with.members.begin(), with.members.end(), k) - with.members.begin();
    lambda[m] = div[static_cast<std::size_t>(pos)];
  }
  return lambda;
}

}  // namespace

double best_unilateral_deviation(const CoalitionStructure& s, std::size_t k, std::span<const double> mu,
                                 const ChannelRealization& real, const ScenarioConfig& config, std::size_t points) {
  const auto lambda = joined_lambda(s, k, real);
  return grid_best_response(k, mu, lambda, real, config.power_cap, points);
}

SubsetDeviation best_subset_deviation(const CoalitionStructure& s, std::size_t k, std::span<const double> mu,
                                      const ChannelRealization& real, const ScenarioConfig& config) {
  const std::size_t m_count = real.num_subbands();
  if (m_count > 20) throw std::invalid_argument("subset deviation oracle: M <= 20");
  const auto lambda = joined_lambda(s, k, real);
  std::vector<double> power(m_count, 0.0), payoff(m_count, 0.0);
  SubsetDeviation out;
  for (std::size_t m = 0; m < m_count; ++m) {
    const double cost = mu[m] * real.macro_gain(k, m);
    if (!(lambda[m] > 0.0)) continue;
    double p = cost > 0.0 ? 1.0 / cost - 1.0 / lambda[m] : config.power_cap;
    p = std::clamp(p, 0.0, config.power_cap);
    power[m] = p;
    payoff[m] = std::log1p(lambda[m] * p) - cost * p;
    if (payoff[m] > 0.0) out.demand += p;
  }
  for (std::uint32_t mask = 0; mask < (1u << m_count); ++mask) {
    double used = 0.0, total = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) {
      if (mask & (1u << m)) {
        used += power[m];
        total += payoff[m];
      }
    }
    if (used <= config.power_cap * (1.0 + 1e-12)) out.payoff = std::max(out.payoff, total);
  }
  return out;
}

double best_deviation(const CoalitionStructure& s, std::size_t k, std::span<const double> mu,
                      const ChannelRealization& real, const ScenarioConfig& config, std::size_t points) {
  const auto subset = best_subset_deviation(s, k, mu, real, config);
  if (subset.demand <= config.power_cap) return best_unilateral_deviation(s, k, mu, real, config, points);
  return subset.payoff;
}

bool core_blocked_by_enumeration(const CoalitionStructure& outcome, std::span<const double> mu,
                                 const ChannelRealization& real, const ScenarioConfig& config, std::size_t points) {
  const std::size_t k_count = real.num_uus();
  const std::size_t m_count = real.num_subbands();
  if (k_count > 4) throw std::invalid_argument("core enumeration oracle: K <= 4");
  const double steps = static_cast<double>(points - 1);
  for (std::size_t m = 0; m < m_count; ++m) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k_count); ++mask) {
      const Support s = Support::from_mask(m, mask);
      const auto lambda = payoff_division_for(real, s);
      const std::size_t n = s.members.size();
      std::vector<double> target(n), current(n), elsewhere(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = s.members[i];
        const double h = real.macro_gain(j, m);
        target[i] = waterfill_power(lambda[i], mu[m], h, config.power_cap);
        const double p = outcome.power(j, m);
        current[i] = p > 0.0 ? std::log1p(outcome.lambda(j, m) * p) - mu[m] * h * p : 0.0;
        for (std::size_t o = 0; o < m_count; ++o) {
          if (o != m) elsewhere[i] += outcome.power(j, o);
        }
      }
      std::vector<std::size_t> g(n, 1);
      while (true) {
        bool all_better = true;
        double interference = 0.0;
        for (std::size_t i = 0; i < n && all_better; ++i) {
          const std::size_t j = s.members[i];
          const double h = real.macro_gain(j, m);
          const double p = target[i] * static_cast<double>(g[i]) / steps;
          if (!(p > 0.0) || elsewhere[i] + p > config.power_cap + 1e-9) {
            all_better = false;
            break;
          }
          const double share = std::log1p(lambda[i] * p) - mu[m] * h * p;
          if (!(share > current[i] + config.tolerance)) all_better = false;
          interference += h * p;
        }
        if (all_better && interference <= config.interference_cap * (1.0 + 1e-12)) return true;
        std::size_t i = 0;
        while (i < n && ++g[i] == points) g[i++] = 1;
        if (i == n) break;
      }
    }
  }
  return false;
}

}  // namespace hetgame::oracle
