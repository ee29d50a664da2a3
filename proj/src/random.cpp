#include "dpplab/random.hpp"

#include <cmath>

#include "dpplab/error.hpp"

namespace dpplab {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

// splitmix64 is a bijection, so for fixed `seed` this is injective in `stream`.
std::uint64_t engine_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream ^ 0xA5A5A5A5DEADBEEFULL));
}

}  // namespace

RandomState::RandomState(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(engine_seed(seed, stream)) {}

std::uint64_t RandomState::below(std::uint64_t bound) {
  if (bound == 0) throw ArgumentError("RandomState::below: bound must be positive");
  using u128 = unsigned __int128;
  std::uint64_t x = engine_();
  u128 m = static_cast<u128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = engine_();
      m = static_cast<u128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double RandomState::exponential(double rate) {
  return -std::log1p(-uniform()) / rate;
}

RandomState derive_substream(std::uint64_t seed, std::uint64_t index) {
  if (index >= (std::uint64_t{1} << 32)) {
    throw ArgumentError("derive_substream: index must be below 2^32");
  }
  return RandomState(seed, index);
}

}  // namespace dpplab
