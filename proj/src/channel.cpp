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

#include "hetgame/channel.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace hetgame {

void ChannelRealization::validate() const {
  const std::size_t k = macro_gains.rows();
  const std::size_t m = macro_gains.cols();
  if (k == 0 || m == 0) throw std::invalid_argument("channel: empty gain matrix");
  if (femto_gains.size() != m) throw std::invalid_argument("channel: femto gain count != M");
  if (noise.rows() != m || noise.cols() != k) throw std::invalid_argument("channel: noise shape");
  auto check_gain = [](double g) {
    if (!std::isfinite(g) || g < 0.0) throw std::invalid_argument("channel: gain must be finite and >= 0");
  };
  for (double g : macro_gains.data()) check_gain(g);
  for (const auto& f : femto_gains) {
    if (f.rows() != k || f.cols() != k) throw std::invalid_argument("channel: femto gain shape");
    for (double g : f.data()) check_gain(g);
  }
  for (double s : noise.data()) {
    if (!std::isfinite(s) || s <= 0.0) throw std::invalid_argument("channel: noise must be > 0");
  }
}

double exponential_fading(std::mt19937_64& rng, double mean) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  return -mean * std::log1p(-u);
}

ChannelRealization generate_channel(const ScenarioConfig& config, const FadingSampler& sampler) {
  config.validate();
  const std::size_t num_uus = config.num_uus;
  const std::size_t num_subbands = config.num_subbands;
  std::mt19937_64 rng(config.seed);

  ChannelRealization real;
  real.macro_gains = Matrix(num_uus, num_subbands);
  for (std::size_t k = 0; k < num_uus; ++k) {
    for (std::size_t m = 0; m < num_subbands; ++m) {
      real.macro_gains(k, m) = sampler(rng, config.fading_scale);
    }
  }
  real.femto_gains.reserve(num_subbands);
  for (std::size_t m = 0; m < num_subbands; ++m) {
    Matrix g(num_uus, num_uus);
    for (std::size_t j = 0; j < num_uus; ++j) {
      for (std::size_t k = 0; k < num_uus; ++k) g(j, k) = sampler(rng, config.fading_scale);
    }
    real.femto_gains.push_back(std::move(g));
  }
  real.noise = Matrix(num_subbands, num_uus, config.noise_floor);
  return real;
}

void write_channel_csv(std::ostream& out, const ChannelRealization& real) {
  const std::size_t num_uus = real.num_uus();
  out << "uu,subband,h";
  for (std::size_t j = 0; j < num_uus; ++j) out << ",g_" << j;
  out << ",sigma\n";
  const auto old_precision = out.precision(17);
  for (std::size_t k = 0; k < num_uus; ++k) {
    for (std::size_t m = 0; m < real.num_subbands(); ++m) {
      out << k << ',' << m << ',' << real.macro_gain(k, m);
      for (std::size_t j = 0; j < num_uus; ++j) out << ',' << real.femto_gain(m, k, j);
      out << ',' << real.noise_power(m, k) << '\n';
    }
  }
  out.precision(old_precision);
}

}  // namespace hetgame
