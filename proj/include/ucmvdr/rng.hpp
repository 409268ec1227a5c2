// SPDX-License-Identifier: Apache-2.0
//
// ucmvdr: unit circle rectified MVDR beamforming for uniform linear arrays
// Copyright (C) 2026 The ucmvdr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef UCMVDR_RNG_HPP
#define UCMVDR_RNG_HPP

#include <cstdint>
#include <random>

#include "ucmvdr/types.hpp"

namespace ucmvdr {

// SplitMix64 finalizer; a bijective mix of a 64-bit word.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of substream `index` under `base`. Trials draw from
// substream_seed(base_seed, trial) so results do not depend on which worker
// runs which trial.
constexpr std::uint64_t substream_seed(std::uint64_t base,
                                       std::uint64_t index) {
  return splitmix64(splitmix64(base) ^ splitmix64(index + 0x5851F42D4C957F2DULL));
}

// Zero-mean circular complex Gaussian source: real and imaginary parts are
// independent normals with variance sigma^2 / 2 each.
class ComplexGaussianSource {
 public:
  explicit ComplexGaussianSource(std::uint64_t seed) : engine_(seed) {}

  Complex draw(double variance) {
    const double scale = std::sqrt(variance / 2.0);
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {scale * re, scale * im};
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace ucmvdr

#endif  // UCMVDR_RNG_HPP
