// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <stdexcept>

namespace optsample {

/// splitmix64 generator. The output sequence is fixed by the algorithm, not
/// by the standard library, so seeded results are reproducible bit-for-bit.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1).
  double next_double() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1]; safe as a log() argument.
  double next_double_positive() noexcept {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Hash a list of labels (base seed, stream id, run index, ...) into the seed
/// of an independent child stream.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (std::uint64_t p : parts) {
    SplitMix64 s(h ^ (p + 0x9e3779b97f4a7c15ULL));
    h = s.next();
  }
  return h;
}

enum class NoiseKind { gaussian, uniform };

/// Standard normal draw (Box-Muller, cosine branch).
inline double gaussian_sample(SplitMix64& rng) noexcept {
  const double u1 = rng.next_double_positive();
  const double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Zero-mean draw with standard deviation sigma.
inline double noise_sample(SplitMix64& rng, double sigma, NoiseKind kind) {
  switch (kind) {
    case NoiseKind::gaussian:
      return sigma * gaussian_sample(rng);
    case NoiseKind::uniform:
      return sigma * std::sqrt(3.0) * (2.0 * rng.next_double() - 1.0);
  }
  throw std::logic_error("unknown noise kind");
}

}  // namespace optsample
