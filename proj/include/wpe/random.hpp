#pragma once

#include <cstdint>
#include <random>

namespace wpe {

/**
 * Seeded generator used for every random choice in the library.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. Bounded integers use plain rejection sampling instead of
 * std::uniform_int_distribution (implementation-defined), so a seed replays
 * identically on every platform and standard library.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    std::uint64_t x = engine_();
    while (x < threshold) x = engine_();
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finaliser; decorrelates consecutive seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace wpe
