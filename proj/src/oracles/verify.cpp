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

#include "hetgame/oracles/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hetgame/leader.hpp"
#include "hetgame/oracles/oracles.hpp"
#include "hetgame/sim.hpp"

namespace hetgame {

namespace {

PropertyResult make(std::string name, bool passed, std::string detail) {
  return {std::move(name), passed, std::move(detail)};
}

PropertyResult check_certificate(const EquilibriumOutcome& out, const ChannelRealization& real) {
  std::ostringstream d;
  d << "max_unilateral_gain=" << out.max_unilateral_gain << " status=" << to_string(out.final_status);
  // Grid search where the cap is slack, subset enumeration where it binds.
  double oracle_gain = 0.0;
  for (std::size_t k = 0; k < real.num_uus(); ++k) {
    const double best = oracle::best_deviation(out.structure, k, out.prices, real, out.config, 41);
    oracle_gain = std::max(oracle_gain, best - out.uu_payoffs[k]);
  }
  d << " oracle_gain=" << oracle_gain;
  return make("se_certificate", out.converged && oracle_gain <= out.config.tolerance, d.str());
}

PropertyResult check_core(const EquilibriumOutcome& out, const ChannelRealization& real) {
  if (!out.converged || out.flagged()) return make("core", false, "outcome did not converge");
  const auto result = core_check(out.structure, out.prices, real, out.config);
  std::ostringstream d;
  d << "coalitions_checked=" << result.coalitions_checked;
  bool agree = true;
  if (real.num_uus() <= 4) {
    const bool blocked = oracle::core_blocked_by_enumeration(out.structure, out.prices, real, out.config);
    agree = blocked == !result.in_core;
    d << " enumeration_blocked=" << blocked;
  }
  if (result.certificate) {
    d << " blocked by mask " << result.certificate->coalition << " on sub-band " << result.certificate->subband;
  }
  return make("core", result.in_core && agree, d.str());
}

PropertyResult check_price_bracket(const ScenarioConfig& config, const ChannelRealization& real) {
  // Fixed singleton divisions: demand depends on the price of one sub-band only.
  std::size_t worst_band = 0;
  double worst_ratio = 1.0;
  bool ok = true;
  std::ostringstream d;
  for (std::size_t m = 0; m < real.num_subbands(); ++m) {
    std::vector<double> lambda(real.num_uus()), gain(real.num_uus());
    for (std::size_t k = 0; k < real.num_uus(); ++k) {
      lambda[k] = payoff_division_for(real, Support::from_mask(m, SupportMask{1} << k))[0];
      gain[k] = real.macro_gain(k, m);
    }
    double start = 0.0;
    for (std::size_t k = 0; k < real.num_uus(); ++k) {
      if (gain[k] > 0.0) start = std::max(start, lambda[k] / gain[k]);
    }
    start *= 1.0 + 1e-9;
    auto demand = [&](const PriceVector& mu) {
      double q = 0.0;
      for (std::size_t k = 0; k < lambda.size(); ++k) {
        q += waterfill_power(lambda[k], mu[0], gain[k], config.power_cap) * gain[k];
      }
      return std::vector<double>{q};
    };
    const auto descent = descend_prices(start, 1, config.interference_cap, config.epsilon, SIZE_MAX, demand);
    const double found = descent.state.mu[0];
    const double exact = exact_price_oracle(lambda, gain, config.interference_cap, config.power_cap);
    bool band_ok;
    if (exact <= 0.0) {
      band_ok = found <= kPriceFloor / (1.0 - config.epsilon);
    } else {
      const double ratio = found / exact;
      band_ok = ratio >= 1.0 - 1e-8 && ratio <= 1.0 / (1.0 - config.epsilon) + 1e-8;
      if (std::abs(ratio - 1.0) > std::abs(worst_ratio - 1.0)) {
        worst_ratio = ratio;
        worst_band = m;
      }
    }
    ok = ok && band_ok;
  }
  d << "worst found/exact=" << worst_ratio << " on sub-band " << worst_band;
  return make("price_bracket", ok, d.str());
}

PropertyResult check_subset_search(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> power(0.1, 10.0), payoff(-1.0, 5.0), cap(1.0, 30.0);
  std::size_t mismatches = 0;
  const std::size_t trials = 200;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = 1 + t % 10;
    std::vector<double> p(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = power(rng);
      v[i] = payoff(rng);
    }
    const double c = cap(rng);
    const auto got = select_subbands(p, v, c, 15);
    const auto want = oracle::enumerate_subsets(p, v, c);
    double got_payoff = 0.0;
    for (auto i : got.subset) got_payoff += v[i];
    if (std::abs(got_payoff - want.payoff) > 1e-12 * std::max(1.0, std::abs(want.payoff))) ++mismatches;
  }
  return make("subset_enumeration", mismatches == 0,
              std::to_string(mismatches) + " of " + std::to_string(trials) + " instances differ");
}

PropertyResult check_supports(const EquilibriumOutcome& out) {
  const std::size_t k = out.config.num_uus;
  const std::size_t bound = (std::size_t{1} << k) - 1;
  const bool ok = out.supports_seen.size() <= bound && enumerate_supports(k).size() == bound;
  return make("support_count", ok,
              std::to_string(out.supports_seen.size()) + " distinct supports, bound " + std::to_string(bound));
}

}  // namespace

std::vector<PropertyResult> run_verification(const VerifyOptions& options) {
  if (options.num_uus > 5 || options.num_subbands > 4) {
    throw std::invalid_argument("verify runs at K <= 5 and M <= 4");
  }
  ScenarioConfig config = options.base;
  config.num_uus = options.num_uus;
  config.num_subbands = options.num_subbands;
  config.seed = options.seed;
  config.validate();
  const auto real = generate_channel(config);
  const auto out = run_hierarchical(config, real);

  std::vector<PropertyResult> results;
  results.push_back(check_certificate(out, real));
  results.push_back(check_core(out, real));
  results.push_back(check_price_bracket(config, real));
  results.push_back(check_subset_search(options.seed));
  results.push_back(check_supports(out));
  std::ostringstream q;
  q << "max interference " << (out.interference.empty() ? 0.0 : *std::max_element(out.interference.begin(),
                                                                                out.interference.end()))
    << " vs cap " << config.interference_cap;
  results.push_back(make("interference_feasible", out.interference_feasible, q.str()));
  results.push_back(make("power_feasible", out.power_feasible, "row sums within the power cap"));
  return results;
}

}  // namespace hetgame
