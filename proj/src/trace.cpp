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

#include "hetgame/trace.hpp"

#include <cstdio>

namespace hetgame {

const std::vector<std::string>& trace_columns() {
  static const std::vector<std::string> columns = {"run_id", "phase",  "t_outer", "t_inner",      "subband", "uu",
                                                   "mu",     "power",  "lambda",  "interference", "payoff",  "frozen_flag"};
  return columns;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

TraceWriter::TraceWriter(std::ostream* out, std::string run_id) : out_(out), run_id_(std::move(run_id)) {}

void TraceWriter::header() {
  if (!out_) return;
  const auto& cols = trace_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) *out_ << (i ? "," : "") << cols[i];
  *out_ << '\n';
}

void TraceWriter::write(const Row& row) {
  auto& o = *out_;
  auto index = [&](const std::optional<std::size_t>& v) {
    o << ',';
    if (v) o << *v;
  };
  auto number = [&](const std::optional<double>& v) {
    o << ',';
    if (v) o << format_number(*v);
  };
  o << run_id_ << ',' << row.phase;
  index(row.t_outer);
  index(row.t_inner);
  index(row.subband);
  index(row.uu);
  number(row.mu);
  number(row.power);
  number(row.lambda);
  number(row.interference);
  number(row.payoff);
  o << ',';
  if (row.frozen) o << *row.frozen;
  o << '\n';
}

void TraceWriter::price(const PriceState& state, const std::vector<double>& interference) {
  if (!out_) return;
  for (std::size_t m = 0; m < state.mu.size(); ++m) {
    Row r;
      r.phase = "price";
    r.t_outer = state.t;
    r.subband = m;
    r.mu = state.mu[m];
    r.interference = interference[m];
    r.frozen = state.frozen[m] ? 1 : 0;
    write(r);
  }
}

void TraceWriter::coalition(std::size_t t_outer, const FormationResult& formation, std::span<const double> mu,
                            const ChannelRealization& real) {
  if (!out_) return;
  const auto& s = formation.structure;
  for (std::size_t m = 0; m < s.power.cols(); ++m) {
    for (std::size_t k = 0; k < s.power.rows(); ++k) {
      const double p = s.power(k, m);
      if (!(p > 0.0)) continue;
      Row r;
      r.phase = "coalition";
      r.t_outer = t_outer;
      r.t_inner = formation.negotiation.rounds;
      r.subband = m;
      r.uu = k;
      r.mu = mu[m];
      r.power = p;
      r.lambda = s.lambda(k, m);
      r.payoff = subband_payoff(p, mu[m], s.lambda(k, m), real.macro_gain(k, m));
      write(r);
    }
  }
}

void TraceWriter::final_state(const PriceState& state, const CoalitionStructure& structure,
                              const std::vector<double>& interference, const ChannelRealization& real) {
  if (!out_) return;
  for (std::size_t m = 0; m < structure.power.cols(); ++m) {
    for (std::size_t k = 0; k < structure.power.rows(); ++k) {
      const double p = structure.power(k, m);
      Row r;
      r.phase = "final";
      r.t_outer = state.t;
      r.subband = m;
      r.uu = k;
      r.mu = state.mu[m];
      r.power = p;
      r.lambda = structure.lambda(k, m);
      r.interference = interference[m];
      r.payoff = p > 0.0 ? subband_payoff(p, state.mu[m], structure.lambda(k, m), real.macro_gain(k, m)) : 0.0;
      r.frozen = state.frozen[m] ? 1 : 0;
      write(r);
    }
  }
}

}  // namespace hetgame
