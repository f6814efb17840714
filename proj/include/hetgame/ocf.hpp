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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "hetgame/channel.hpp"
#include "hetgame/config.hpp"
#include "hetgame/follower.hpp"
#include "hetgame/mimo.hpp"

namespace hetgame {

/// Value of the partial coalition on one sub-band: sum over members of
/// log(1 + lambda p) - mu h p. Entries with p <= 0 are not members.
double coalition_value(std::span<const double> power, std::span<const double> lambda, double mu,
                       std::span<const double> gain);

/// Support mask of column m of a power allocation.
SupportMask column_support(const PowerAllocation& power, std::size_t m);

/// The partial coalitions (columns of P) with their payoff division.
struct CoalitionStructure {
  PowerAllocation power;
  PayoffDivision lambda;
  std::vector<double> uu_payoffs;

  std::vector<Support> supports() const;
  std::size_t num_coalitions() const;  // non-empty supports
  std::size_t active_uus() const;      // UUs with any positive power
  double average_memberships() const;  // mean sub-bands per UU
};

/// Derives lambda and per-UU payoffs for a power allocation at prices mu.
CoalitionStructure evaluate_structure(const PowerAllocation& power, std::span<const double> mu,
                                      PayoffDivisionCache& cache);

/// Canonical identity of a structure: the support mask of every column
/// followed by every power quantized to 1e-9.
using StructureFingerprint = std::vector<std::uint64_t>;

StructureFingerprint fingerprint(const PowerAllocation& power);

/// 128-bit digest of a fingerprint (two independently seeded 64-bit hashes).
using FingerprintDigest = std::array<std::uint64_t, 2>;

FingerprintDigest digest(const StructureFingerprint& fp);
/// Same value as digest(fingerprint(power)) without materializing the fingerprint.
FingerprintDigest digest(const PowerAllocation& power);

/// Structures already visited by a negotiation. Stores digests, so memory
/// stays proportional to the number of visits rather than K * M per visit.
class StructureHistory {
 public:
  explicit StructureHistory(bool keep_order = false) : keep_order_(keep_order) {}
  bool contains(const StructureFingerprint& fp) const { return contains(digest(fp)); }
  bool contains(const FingerprintDigest& d) const { return seen_.count(d) != 0; }
  /// False if already present.
  bool insert(const StructureFingerprint& fp) { return insert(digest(fp)); }
  bool insert(const FingerprintDigest& d);
  /// Every insert in order, repeats included; empty unless constructed
  /// with keep_order.
  const std::vector<FingerprintDigest>& order() const { return order_; }
  std::size_t size() const { return seen_.size(); }

 private:
  struct DigestHash {
    std::size_t operator()(const FingerprintDigest& d) const noexcept { return static_cast<std::size_t>(d[0]); }
  };
  bool keep_order_;
  std::unordered_set<FingerprintDigest, DigestHash> seen_;
  std::vector<FingerprintDigest> order_;
};

struct RowProposal {
  std::vector<double> power;
  double payoff = 0.0;
};

/// Everything one player's turn needs from the model.
struct Turn {
  std::size_t messages = 0;
  double payoff = 0.0;  // current payoff
  RowProposal proposal;
};

/// A game the negotiation engine can play: players take turns replacing
/// their row of the power matrix with a best response.
class NegotiationModel {
 public:
  virtual ~NegotiationModel() = default;
  virtual std::size_t num_players() const = 0;
  virtual std::size_t num_subbands() const = 0;
  /// Structure announced after the sensing step.
  virtual PowerAllocation opening_structure() = 0;
  virtual double payoff(std::size_t k, const PowerAllocation& structure) = 0;
  virtual RowProposal best_response(std::size_t k, const PowerAllocation& structure) = 0;
  /// Control messages player k exchanges when it negotiates on `structure`.
  virtual std::size_t negotiation_messages(std::size_t /*k*/, const PowerAllocation& /*structure*/) { return 0; }
  /// One turn: messages, current payoff and best response, in that order.
  virtual Turn take_turn(std::size_t k, const PowerAllocation& structure) {
    Turn t;
    t.messages = negotiation_messages(k, structure);
    t.payoff = payoff(k, structure);
    t.proposal = best_response(k, structure);
    return t;
  }
};

enum class FormationStatus {
  stable,         // a full round without any improving move
  cycle_blocked,  // the only improving moves would revisit a structure
  forced_stop,    // round budget exhausted
};

std::string to_string(FormationStatus status);

struct NegotiationOptions {
  double tolerance = 1e-6;
  std::size_t max_rounds = 64;
  bool use_history = true;
  bool record_visits = false;  // keep the digest of every applied structure
};

struct NegotiationResult {
  PowerAllocation structure;
  FormationStatus status = FormationStatus::stable;
  std::size_t rounds = 0;
  std::size_t applied_moves = 0;
  std::size_t blocked_moves = 0;
  bool revisited = false;  // some applied move recreated an earlier structure
  std::vector<FingerprintDigest> visits;      // opening structure first; needs record_visits
  std::vector<SupportMask> supports_seen;     // sorted, unique, non-empty
  std::size_t messages_total = 0;
  std::size_t max_round_messages = 0;
};

/// Sequential negotiation: round-robin over players in ascending index; a
/// player's best response is applied when it raises that player's payoff by
/// more than `tolerance`. With history enabled, a move that would recreate
/// an earlier structure is discarded and the player passes. Stops after a
/// round with no applied move, or after `max_rounds` rounds.
NegotiationResult negotiate(NegotiationModel& model, const NegotiationOptions& options);

struct FormationOptions {
  bool single_subband = false;  // non-overlapping baseline: at most one sub-band per UU
  bool use_history = true;
};

struct FormationResult {
  CoalitionStructure structure;
  NegotiationResult negotiation;
};

/// Overlapping coalition formation at fixed prices.
///
/// Sensing: every UU best-responds as if it occupied each sub-band alone.
/// Negotiation: a UU evaluates sub-band m with the division factor it would
/// get in the coalition formed by the current members of m plus itself.
FormationResult form_coalitions(std::span<const double> mu, const ChannelRealization& real,
                                const ScenarioConfig& config, const FormationOptions& options = {},
                                PayoffDivisionCache* cache = nullptr);

/// Distinct non-empty supports, ignoring which sub-band they occurred on.
std::size_t count_distinct_supports(std::span<const PowerAllocation> trace);
std::size_t count_distinct_supports(std::span<const SupportMask> supports);

/// All non-empty subsets of {0..K-1}, ascending by mask.
std::vector<SupportMask> enumerate_supports(std::size_t num_uus);

inline constexpr std::size_t kCoreGridPoints = 33;

struct BlockingCertificate {
  SupportMask coalition = 0;
  std::size_t subband = 0;
  std::vector<double> power;            // aligned with coalition members
  std::vector<double> deviation_share;  // member payoff on the sub-band after deviating
  std::vector<double> current_share;    // member payoff on the sub-band now
};

struct CoreCheckResult {
  bool in_core = true;
  std::size_t grid_points = kCoreGridPoints;
  std::size_t coalitions_checked = 0;
  std::optional<BlockingCertificate> certificate;
};

/// Searches for a blocking deviation: a coalition S forming alone on one
/// sub-band m, with members' powers on a 33-point grid of their water-filled
/// powers (every member strictly positive), respecting the interference cap
/// on m and each member's power cap given its other sub-bands. S blocks when
/// every member's payoff share on m beats its current share by more than
/// the tolerance. Grid-relative: a pass does not prove continuous stability.
/// Throws std::invalid_argument("oracle scale exceeded") for K > 5 or M > 4.
CoreCheckResult core_check(const CoalitionStructure& outcome, std::span<const double> mu,
                           const ChannelRealization& real, const ScenarioConfig& config);

}  // namespace hetgame
