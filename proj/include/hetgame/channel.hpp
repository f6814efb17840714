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
#include <functional>
#include <iosfwd>
#include <random>
#include <vector>

#include "hetgame/config.hpp"
#include "hetgame/matrix.hpp"

namespace hetgame {

/// All gains of one time slot.
///
///  - macro_gains(k, m): UU k -> macro receiver on sub-band m.
///  - femto_gains[m](j, k): UU j -> femto BS k on sub-band m.
///  - noise(m, k): interference-plus-noise power at BS k on sub-band m.
struct ChannelRealization {
  Matrix macro_gains;
  std::vector<Matrix> femto_gains;
  Matrix noise;

  std::size_t num_uus() const { return macro_gains.rows(); }
  std::size_t num_subbands() const { return macro_gains.cols(); }

  double macro_gain(std::size_t k, std::size_t m) const { return macro_gains(k, m); }
  double femto_gain(std::size_t m, std::size_t from, std::size_t to) const {
    return femto_gains[m](from, to);
  }
  double noise_power(std::size_t m, std::size_t k) const { return noise(m, k); }

  /// Throws std::invalid_argument on shape mismatch, negative or non-finite
  /// gains, or non-positive noise.
  void validate() const;
};

/// Draws one fading power gain with the given mean.
using FadingSampler = std::function<double(std::mt19937_64&, double mean)>;

/// Exponential (Rayleigh-power) sample via inversion of a 53-bit uniform.
double exponential_fading(std::mt19937_64& rng, double mean);

/// Draws every gain i.i.d. from `sampler`; noise is fixed at the noise floor.
/// Draw order is H row-major, then G' sub-band by sub-band, row-major.
ChannelRealization generate_channel(const ScenarioConfig& config,
                                    const FadingSampler& sampler = exponential_fading);

/// One row per (uu, subband): uu, subband, h, g_0..g_{K-1}, sigma, where g_j
/// is the gain from that UU to femto BS j on the sub-band.
void write_channel_csv(std::ostream& out, const ChannelRealization& real);

}  // namespace hetgame
