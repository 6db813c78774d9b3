// Copyright 2026 The claimsim Authors
//
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
#include <cstdint>
#include <limits>

namespace claimsim {

/// Philox4x32-10 counter-based block cipher (Salmon et al., SC'11).
/// Maps a 128-bit counter and a 64-bit key to 128 random bits.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key) noexcept;
};

/// Role of a random substream. Every independent source of randomness in the
/// model draws from its own purpose so that changing one leaves the others
/// bitwise unchanged.
enum class Purpose : std::uint64_t {
  kAccidentTime = 1,
  kDelay = 2,
  kFirstMark = 3,
  kDevelopment = 4,
  kIntensityDriver = 5,
  kMarketDriver = 6,
  kMonteCarloPath = 7,
  kOuterIntensity = 8,
  kPortfolio = 9,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stable hash of (seed, index, purpose) used to key substreams.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index,
                                    Purpose purpose) noexcept {
  return mix64(mix64(seed ^ mix64(index)) +
               static_cast<std::uint64_t>(purpose));
}

/// Sequential view of one Philox stream. Satisfies
/// UniformRandomBitGenerator, but the continuous variates below are used
/// instead of <random> distributions so that output is identical across
/// standard library implementations.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept;
  /// Standard exponential, strictly positive.
  double exponential() noexcept;
  /// Standard normal (Box-Muller, one variate per call).
  double normal() noexcept;
  /// Gamma(shape, 1) for shape >= 1 (Marsaglia-Tsang).
  double gamma(double shape) noexcept;

 private:
  void refill() noexcept;

  Philox4x32::Key key_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int used_ = 2;
};

inline RandomStream substream(std::uint64_t seed, std::uint64_t index,
                              Purpose purpose) noexcept {
  return RandomStream(derive_seed(seed, index, purpose));
}

}  // namespace claimsim
