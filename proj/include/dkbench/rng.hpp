#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace dkbench {

namespace detail {

// SplitMix64 output finalizer (Steele, Lea & Flood / Vigna reference constants).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace detail

// Project-wide pseudo-random generator: SplitMix64. Chosen because the output
// stream is fully determined by the seed with no dependence on platform or
// standard-library internals, so every stochastic result in the toolkit is
// reproducible bit-for-bit from the recorded seeds. Not cryptographic.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return detail::mix64(state_);
  }

  // Unbiased uniform draw from [0, n) via Lemire's multiply-reject method.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

  // Uniform in [0, 1) with 53 random bits.
  double real01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool coin() { return (next_u64() >> 63) != 0; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

 private:
  std::uint64_t state_;
};

// Derives the seed of an independent substream from (master, stage tag,
// indices). Every stochastic stage of the pipeline owns one such stream, so
// any slice of a run can be reproduced in isolation.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
  return detail::mix64(master ^ detail::fnv1a64(tag));
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t i0) {
  return detail::mix64(derive_seed(master, tag) ^ (i0 + 0x9E3779B97F4A7C15ull));
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t i0, std::uint64_t i1) {
  return detail::mix64(derive_seed(master, tag, i0) ^ (i1 + 0x9E3779B97F4A7C15ull));
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t i0, std::uint64_t i1,
                                 std::uint64_t i2) {
  return detail::mix64(derive_seed(master, tag, i0, i1) ^ (i2 + 0x9E3779B97F4A7C15ull));
}

}  // namespace dkbench
