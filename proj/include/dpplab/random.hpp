#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace dpplab {

/// Seed used when neither `--seed` nor DPPLAB_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 0xD5EED;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seeded 64-bit generator. Satisfies UniformRandomBitGenerator so it can be
/// handed to the std distributions. Each sampling call owns one exclusively.
class RandomState {
 public:
  using result_type = std::uint64_t;

  explicit RandomState(std::uint64_t seed = kDefaultSeed, std::uint64_t stream = 0);

  static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound);

  double normal() { return normal_(engine_); }
  /// Exponential with the given rate.
  double exponential(double rate = 1.0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// Independent substream `index` of `seed`. Deterministic; for a fixed seed,
/// distinct indices always map to distinct engine seeds. Requires index < 2^32.
RandomState derive_substream(std::uint64_t seed, std::uint64_t index);

}  // namespace dpplab
