// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace wnv {

/// FNV-1a 64-bit hash, used for seed derivation and manifest hashes.
std::uint64_t fnv1a64(std::string_view data);

/// Derives an independent substream seed from a base seed and a tag.
std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag);

/// Seeded random stream. All randomness in the simulator flows through
/// named substreams so that e.g. the fading sequence is unchanged when
/// the CSI error level changes.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  static RngStream substream(std::uint64_t seed, std::string_view tag) {
    return RngStream(mix_seed(seed, tag));
  }

  /// Uniform on [0, 1).
  double uniform() { return unit_(gen_); }

  /// Uniform on [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard real Gaussian N(0, 1).
  double normal() { return normal_(gen_); }

  /// Circular complex Gaussian CN(0, 1): unit total variance.
  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * kInvSqrt2, im * kInvSqrt2};
  }

 private:
  static constexpr double kInvSqrt2 = 0.7071067811865475244;
  std::mt19937_64 gen_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace wnv
