#pragma once

#include <cstdint>
#include <vector>

namespace adasvm {

// SplitMix64 finalizer (Steele, Lea & Flood / Stafford mix 13).
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// SplitMix64: the output at step k is mix64(seed + k*gamma), which makes
// it a counter-based generator. All data splits in this project draw from
// it so fold assignments are reproducible from (seed, k) alone.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  // Unbiasedness is irrelevant at our scale; plain modulo is pinned so the
  // shuffles below are reproducible across implementations.
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

  // Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Derives an independent stream from a user seed and a fixed tag.
// Pinned formula: SplitMix64(mix64(seed ^ mix64(tag))).
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t tag) {
  return SplitMix64(mix64(seed ^ mix64(tag)));
}

// Backward Fisher-Yates with j = next() % (i+1).
template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace adasvm
