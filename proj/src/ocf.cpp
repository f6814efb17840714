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

#include "hetgame/ocf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "hetgame/leader.hpp"

namespace hetgame {

double coalition_value(std::span<const double> power, std::span<const double> lambda, double mu,
                       std::span<const double> gain) {
  double value = 0.0;
  for (std::size_t k = 0; k < power.size(); ++k) {
    if (power[k] > 0.0) value += subband_payoff(power[k], mu, lambda[k], gain[k]);
  }
  return value;
}

SupportMask column_support(const PowerAllocation& power, std::size_t m) {
  SupportMask mask = 0;
  for (std::size_t k = 0; k < power.rows(); ++k) {
    if (power(k, m) > 0.0) mask |= SupportMask{1} << k;
  }
  return mask;
}

std::vector<Support> CoalitionStructure::supports() const {
  std::vector<Support> out;
  for (std::size_t m = 0; m < power.cols(); ++m) out.push_back(Support::from_mask(m, column_support(power, m)));
  return out;
}

std::size_t CoalitionStructure::num_coalitions() const {
  std::size_t n = 0;
  for (std::size_t m = 0; m < power.cols(); ++m) n += column_support(power, m) != 0 ? 1 : 0;
  return n;
}

std::size_t CoalitionStructure::active_uus() const {
  std::size_t n = 0;
  for (std::size_t k = 0; k < power.rows(); ++k) {
    const auto row = power.row(k);
    n += std::any_of(row.begin(), row.end(), [](double p) { return p > 0.0; }) ? 1 : 0;
  }
  return n;
}

double CoalitionStructure::average_memberships() const {
  if (power.rows() == 0) return 0.0;
  std::size_t total = 0;
  for (double p : power.data()) total += p > 0.0 ? 1 : 0;
  return static_cast<double>(total) / static_cast<double>(power.rows());
}

CoalitionStructure evaluate_structure(const PowerAllocation& power, std::span<const double> mu,
                                      PayoffDivisionCache& cache) {
  const auto& real = cache.channel();
  CoalitionStructure s;
  s.power = power;
  s.lambda = PayoffDivision(power.rows(), power.cols());
  for (std::size_t m = 0; m < power.cols(); ++m) {
    const SupportMask mask = column_support(power, m);
    if (mask == 0) continue;
    const auto& div = cache.division(m, mask);
    std::size_t i = 0;
    for (SupportMask rest = mask; rest != 0; rest &= rest - 1, ++i) {
      s.lambda(static_cast<std::size_t>(std::countr_zero(rest)), m) = div[i];
    }
  }
  s.uu_payoffs.resize(power.rows());
  for (std::size_t k = 0; k < power.rows(); ++k) {
    s.uu_payoffs[k] = uu_payoff(power.row(k), mu, s.lambda.row(k), real.macro_gains.row(k));
  }
  return s;
}


namespace {

class Digester {
 public:
  void add(std::uint64_t w) {
    d_[0] = (d_[0] ^ w) * 0x100000001b3ULL;
    d_[0] ^= d_[0] >> 29;
    d_[1] = (d_[1] + w + 0x9e3779b97f4a7c15ULL) * 0xbf58476d1ce4e5b9ULL;
    d_[1] ^= d_[1] >> 31;
  }
  FingerprintDigest value() const { return d_; }

 private:
  FingerprintDigest d_ = {0xcbf29ce484222325ULL, 0x84222325cbf29ce4ULL};
};

std::uint64_t quantize(double p) {
  const double q = std::nearbyint(p * 1e9);
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(std::clamp(q, -9.0e18, 9.0e18)));
}

}  // namespace

StructureFingerprint fingerprint(const PowerAllocation& power) {
  StructureFingerprint fp;
  fp.reserve(power.cols() + power.data().size());
  for (std::size_t m = 0; m < power.cols(); ++m) fp.push_back(column_support(power, m));
  for (std::size_t m = 0; m < power.cols(); ++m) {
    for (std::size_t k = 0; k < power.rows(); ++k) fp.push_back(quantize(power(k, m)));
  }
  return fp;
}

FingerprintDigest digest(const StructureFingerprint& fp) {
  Digester d;
  for (std::uint64_t w : fp) d.add(w);
  return d.value();
}

FingerprintDigest digest(const PowerAllocation& power) {
  Digester d;
  for (std::size_t m = 0; m < power.cols(); ++m) d.add(column_support(power, m));
  for (std::size_t m = 0; m < power.cols(); ++m) {
    for (std::size_t k = 0; k < power.rows(); ++k) d.add(quantize(power(k, m)));
  }
  return d.value();
}

bool StructureHistory::insert(const FingerprintDigest& d) {
  if (keep_order_) order_.push_back(d);
  return seen_.insert(d).second;
}

std::string to_string(FormationStatus status) {
  switch (status) {
    case FormationStatus::stable:
      return "stable";
    case FormationStatus::cycle_blocked:
      return "cycle_blocked";
    case FormationStatus::forced_stop:
      return "forced_stop";
  }
  return "unknown";
}

namespace {

// Non-empty supports seen so far: a flat table for small K, a tree beyond.
class SupportSet {
 public:
  explicit SupportSet(std::size_t num_players) {
    if (num_players <= 20) flat_.assign(std::size_t{1} << num_players, 0);
  }
  void add(SupportMask mask) {
    if (mask == 0) return;
    if (!flat_.empty()) {
      flat_[mask] = 1;
    } else {
      tree_.insert(mask);
    }
  }
  void add_columns(const PowerAllocation& p) {
    for (std::size_t m = 0; m < p.cols(); ++m) add(column_support(p, m));
  }
  std::vector<SupportMask> sorted() const {
    if (flat_.empty()) return {tree_.begin(), tree_.end()};
    std::vector<SupportMask> out;
    for (std::size_t s = 1; s < flat_.size(); ++s) {
      if (flat_[s]) out.push_back(s);
    }
    return out;
  }

 private:
  std::vector<std::uint8_t> flat_;
  std::set<SupportMask> tree_;
};

}  // namespace

NegotiationResult negotiate(NegotiationModel& model, const NegotiationOptions& options) {
  NegotiationResult result;
  const std::size_t players = model.num_players();
  PowerAllocation current = model.opening_structure();
  if (current.rows() != players || current.cols() != model.num_subbands()) {
    throw std::invalid_argument("negotiate: opening structure has the wrong shape");
  }

  StructureHistory history(options.record_visits);
  SupportSet supports(players);
  history.insert(digest(current));
  supports.add_columns(current);
  std::vector<double> previous(current.cols());

  result.status = FormationStatus::forced_stop;
  for (std::size_t round = 1; round <= options.max_rounds; ++round) {
    result.rounds = round;
    std::size_t applied = 0;
    std::size_t blocked = 0;
    std::size_t round_messages = 0;
    for (std::size_t k = 0; k < players; ++k) {
      Turn turn = model.take_turn(k, current);
      round_messages += turn.messages;
      if (!(turn.proposal.payoff > turn.payoff + options.tolerance)) continue;

      const auto row = current.row(k);
      std::copy(row.begin(), row.end(), previous.begin());
      current.set_row(k, turn.proposal.power);
      const auto fp = digest(current);
      if (history.contains(fp)) {
        if (options.use_history) {
          current.set_row(k, previous);
          ++blocked;
          continue;
        }
        result.revisited = true;
      }
      history.insert(fp);
      for (std::size_t m = 0; m < current.cols(); ++m) {
        if ((previous[m] > 0.0) != (current(k, m) > 0.0)) supports.add(column_support(current, m));
      }
      ++applied;
    }
    result.applied_moves += applied;
    result.blocked_moves += blocked;
    result.messages_total += round_messages;
    result.max_round_messages = std::max(result.max_round_messages, round_messages);
    if (applied == 0) {
      result.status = blocked == 0 ? FormationStatus::stable : FormationStatus::cycle_blocked;
      break;
    }
  }
  result.structure = std::move(current);
  result.visits = history.order();
  result.supports_seen = supports.sorted();
  return result;
}

namespace {

// The spectrum-sharing game at fixed prices.
class SpectrumModel final : public NegotiationModel {
 public:
  SpectrumModel(std::span<const double> mu, const ChannelRealization& real, const ScenarioConfig& config,
                bool single_subband, PayoffDivisionCache& cache)
      : mu_(mu), real_(real), config_(config), single_(single_subband), cache_(cache),
        lambda_row_(real.num_subbands()) {}

  std::size_t num_players() const override { return real_.num_uus(); }
  std::size_t num_subbands() const override { return real_.num_subbands(); }

  PowerAllocation opening_structure() override {
    PowerAllocation p(num_players(), num_subbands());
    for (std::size_t k = 0; k < num_players(); ++k) {
      const SupportMask self = SupportMask{1} << k;
      for (std::size_t m = 0; m < num_subbands(); ++m) lambda_row_[m] = cache_.lambda_of(m, self, k);
      p.set_row(k, hetgame::best_response(k, mu_, lambda_row_, real_, config_, single_).power);
    }
    return p;
  }

  double payoff(std::size_t k, const PowerAllocation& structure) override {
    double total = 0.0;
    for (std::size_t m = 0; m < num_subbands(); ++m) {
      const double p = structure(k, m);
      if (!(p > 0.0)) continue;
      const double lambda = cache_.lambda_of(m, column_support(structure, m), k);
      total += subband_payoff(p, mu_[m], lambda, real_.macro_gain(k, m));
    }
    return total;
  }

  RowProposal best_response(std::size_t k, const PowerAllocation& structure) override {
    const SupportMask self = SupportMask{1} << k;
    for (std::size_t m = 0; m < num_subbands(); ++m) {
      lambda_row_[m] = cache_.lambda_of(m, column_support(structure, m) | self, k);
    }
    auto br = hetgame::best_response(k, mu_, lambda_row_, real_, config_, single_);
    return {std::move(br.power), br.payoff};
  }

  Turn take_turn(std::size_t k, const PowerAllocation& structure) override {
    const SupportMask self = SupportMask{1} << k;
    Turn t;
    for (std::size_t m = 0; m < num_subbands(); ++m) {
      const SupportMask mask = column_support(structure, m);
      t.messages += static_cast<std::size_t>(std::popcount(mask & ~self));
      lambda_row_[m] = cache_.lambda_of(m, mask | self, k);
      const double p = structure(k, m);
      if (p > 0.0) t.payoff += subband_payoff(p, mu_[m], lambda_row_[m], real_.macro_gain(k, m));
    }
    auto br = hetgame::best_response(k, mu_, lambda_row_, real_, config_, single_);
    t.proposal = {std::move(br.power), br.payoff};
    return t;
  }

  std::size_t negotiation_messages(std::size_t k, const PowerAllocation& structure) override {
    const SupportMask self = SupportMask{1} << k;
    std::size_t n = 0;
    for (std::size_t m = 0; m < num_subbands(); ++m) {
      n += static_cast<std::size_t>(std::popcount(column_support(structure, m) & ~self));
    }
    return n;
  }

 private:
  std::span<const double> mu_;
  const ChannelRealization& real_;
  const ScenarioConfig& config_;
  bool single_;
  PayoffDivisionCache& cache_;
  std::vector<double> lambda_row_;
};

}  // namespace

FormationResult form_coalitions(std::span<const double> mu, const ChannelRealization& real,
                                const ScenarioConfig& config, const FormationOptions& options,
                                PayoffDivisionCache* cache) {
  if (mu.size() != real.num_subbands()) throw std::invalid_argument("form_coalitions: price vector length");
  std::optional<PayoffDivisionCache> local;
  if (cache == nullptr) cache = &local.emplace(real);

  SpectrumModel model(mu, real, config, options.single_subband, *cache);
  NegotiationOptions nopts;
  nopts.tolerance = config.tolerance;
  nopts.max_rounds = config.inner_round_limit();
  nopts.use_history = options.use_history;

  FormationResult out;
  out.negotiation = negotiate(model, nopts);
  out.structure = evaluate_structure(out.negotiation.structure, mu, *cache);
  return out;
}

std::size_t count_distinct_supports(std::span<const PowerAllocation> trace) {
  std::set<SupportMask> seen;
  for (const auto& p : trace) {
    for (std::size_t m = 0; m < p.cols(); ++m) {
      if (const auto mask = column_support(p, m); mask != 0) seen.insert(mask);
    }
  }
  return seen.size();
}

std::size_t count_distinct_supports(std::span<const SupportMask> supports) {
  std::set<SupportMask> seen;
  for (auto s : supports) {
    if (s != 0) seen.insert(s);
  }
  return seen.size();
}

std::vector<SupportMask> enumerate_supports(std::size_t num_uus) {
  if (num_uus == 0 || num_uus > 20) throw std::invalid_argument("enumerate_supports: K must be in [1, 20]");
  std::vector<SupportMask> out;
  const SupportMask end = SupportMask{1} << num_uus;
  for (SupportMask s = 1; s < end; ++s) out.push_back(s);
  return out;
}

CoreCheckResult core_check(const CoalitionStructure& outcome, std::span<const double> mu,
                           const ChannelRealization& real, const ScenarioConfig& config) {
  const std::size_t num_uus = real.num_uus();
  const std::size_t num_subbands = real.num_subbands();
  if (num_uus > 5 || num_subbands > 4) throw std::invalid_argument("oracle scale exceeded");
  if (outcome.power.rows() != num_uus || outcome.power.cols() != num_subbands) {
    throw std::invalid_argument("core_check: structure shape");
  }

  const double steps = static_cast<double>(kCoreGridPoints - 1);
  CoreCheckResult result;
  for (std::size_t m = 0; m < num_subbands; ++m) {
    for (SupportMask coalition : enumerate_supports(num_uus)) {
      ++result.coalitions_checked;
      const Support support = Support::from_mask(m, coalition);
      const auto lambda = payoff_division_for(real, support);
      const std::size_t n = support.members.size();

      BlockingCertificate cert;
      cert.coalition = coalition;
      cert.subband = m;
      double interference = 0.0;
      bool blocking = true;
      for (std::size_t i = 0; i < n && blocking; ++i) {
        const std::size_t j = support.members[i];
        const double h = real.macro_gain(j, m);
        const double current_p = outcome.power(j, m);
        const double current =
            current_p > 0.0 ? subband_payoff(current_p, mu[m], outcome.lambda(j, m), h) : 0.0;
        double elsewhere = 0.0;
        for (std::size_t other = 0; other < num_subbands; ++other) {
          if (other != m) elsewhere += outcome.power(j, other);
        }
        const double target = waterfill_power(lambda[i], mu[m], h, config.power_cap);

        // Shares rise with the grid scale (target never exceeds the unconstrained
        // optimum), so the smallest improving grid point is the cheapest choice.
        std::optional<double> chosen;
        double share = 0.0;
        for (std::size_t g = 1; g < kCoreGridPoints; ++g) {
          const double p = target * static_cast<double>(g) / steps;
          if (!(p > 0.0)) break;
          const double s = subband_payoff(p, mu[m], lambda[i], h);
          if (s > current + config.tolerance) {
            chosen = p;
            share = s;
            break;
          }
        }
        if (!chosen || elsewhere + *chosen > config.power_cap + 1e-9) {
          blocking = false;
          break;
        }
        interference += *chosen * h;
        cert.power.push_back(*chosen);
        cert.deviation_share.push_back(share);
        cert.current_share.push_back(current);
      }
      if (blocking && interference <= config.interference_cap * (1.0 + 1e-12)) {
        result.in_core = false;
        result.certificate = std::move(cert);
        return result;
      }
    }
  }
  return result;
}

}  // namespace hetgame
