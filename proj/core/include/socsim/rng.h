#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace socsim {

// FNV-1a 64-bit hash; used to fold stream labels into seeds and to pin
// bundled fixture files.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char ch : s) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001B3ull;
  }
  return h;
}

// splitmix64 output mixer.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based splittable RNG: the (seed, label) pair names an independent
// stream, and identical pairs always replay the identical draw sequence on
// every platform. Construction folds the label hash into the seed with the
// splitmix64 golden-ratio increment; draws advance a splitmix64 counter.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view label)
      : state_(splitmix64_mix(seed + kGolden * fnv1a64(label))) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return splitmix64_mix(state_);
  }

  // Uniform double in [0, 1), 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound); bound must be positive. Multiply-shift
  // keeps the mapping exact without modulo bias at these bound sizes.
  std::uint64_t next_int(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  // Uniform integer in [lo, hi] inclusive.
  int next_between(int lo, int hi) {
    return lo + static_cast<int>(next_int(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Fisher-Yates shuffle over any random-access container.
  template <typename Container>
  void shuffle(Container& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  std::uint64_t state_;
};

}  // namespace socsim
