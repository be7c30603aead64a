#pragma once

#include <cstdint>
#include <limits>

namespace srhsd {

/// SplitMix64 finalizer; a bijective 64-bit mix.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of substream `index` under master `seed`. Substreams are a pure
/// function of the pair, so replications can run in any order or thread.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// xoshiro256** generator; satisfies UniformRandomBitGenerator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept;

 private:
  std::uint64_t s_[4];
};

/// Standard normal deviates by Marsaglia's polar method. The second deviate
/// of each accepted pair is cached, so the sequence depends only on the
/// generator state.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) noexcept : gen_(seed) {}
  double operator()() noexcept;

 private:
  Xoshiro256 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace srhsd
