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
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hetgame/follower.hpp"
#include "hetgame/leader.hpp"
#include "hetgame/ocf.hpp"

namespace hetgame {

/// Column order of the trace CSV.
const std::vector<std::string>& trace_columns();

/// Renders a double with 17 significant digits ("%.17g").
std::string format_number(double value);

/// Streams trace rows. Writes nothing when constructed with a null stream.
class TraceWriter {
 public:
  TraceWriter(std::ostream* out, std::string run_id);

  bool enabled() const { return out_ != nullptr; }
  void header();

  /// One `price` row per sub-band after a leader step.
  void price(const PriceState& state, const std::vector<double>& interference);

  /// One `coalition` row per member (positive power) after a formation.
  void coalition(std::size_t t_outer, const FormationResult& formation, std::span<const double> mu,
                 const ChannelRealization& real);

  /// One `final` row per (sub-band, UU) pair of the returned outcome.
  void final_state(const PriceState& state, const CoalitionStructure& structure,
                   const std::vector<double>& interference, const ChannelRealization& real);

 private:
  struct Row {
    const char* phase = "";
    std::optional<std::size_t> t_outer, t_inner, subband, uu;
    std::optional<double> mu, power, lambda, interference, payoff;
    std::optional<int> frozen;
  };
  void write(const Row& row);

  std::ostream* out_;
  std::string run_id_;
};

}  // namespace hetgame
