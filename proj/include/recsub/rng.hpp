#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace recsub {

/// SplitMix64 finalizer. Used both as the generator's output function and to
/// derive child seeds, so every stream in the project is a pure function of
/// (seed, stream id, position).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derive an independent seed for sub-stream `stream` of `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(mix64(seed) ^ mix64(stream + 0x9e3779b97f4a7c15ULL));
}

/// Counter-based 64-bit generator: output i is mix64(seed + (i+1)*gamma).
/// Satisfies UniformRandomBitGenerator, but the helpers below avoid the
/// standard distributions because their output differs across standard
/// library implementations.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Child generator for an independent stream.
  constexpr SplitMix64 split(std::uint64_t stream) const noexcept {
    return SplitMix64(derive_seed(state_, stream));
  }

  /// Uniform integer in [0, bound). bound must be > 0. Lemire's
  /// multiply-and-reject method; unbiased.
  std::uint64_t below(std::uint64_t bound) noexcept {
    unsigned __int128 prod = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        prod = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(prod);
      }
    }
    return static_cast<std::uint64_t>(prod >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1].
  double uniform_open_zero() noexcept { return 1.0 - uniform(); }

 private:
  std::uint64_t state_;
};

/// In-place Fisher-Yates shuffle driven by SplitMix64::below.
template <typename RandomIt>
void shuffle(RandomIt first, RandomIt last, SplitMix64& rng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const auto j = rng.below(i);
    using std::swap;
    swap(first[i - 1], first[j]);
  }
}

}  // namespace recsub
