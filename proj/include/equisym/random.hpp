#pragma once

#include <cstdint>
#include <random>

namespace equisym {

/// Seedable random source passed explicitly to every randomised operation.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double normal() { return normal_(engine_); }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }
  std::mt19937_64& engine() { return engine_; }

  /// Deterministic sub-seed for stream `k`; independent of how many draws were made.
  std::uint64_t derive(std::uint64_t k) const { return mix(seed_ ^ mix(k + 0x9e3779b97f4a7c15ULL)); }
  RandomSource split(std::uint64_t k) const { return RandomSource(derive(k)); }

  static std::uint64_t mix(std::uint64_t z) {
    // splitmix64 finaliser
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace equisym
