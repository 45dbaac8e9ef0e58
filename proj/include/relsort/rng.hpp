#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace relsort {

/// SplitMix64 finalizer; also used to derive substream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seeded pseudo-random stream.
///
/// Substreams are keyed by a list of integers, so a replicate's stream
/// depends only on (seed, key) and never on scheduling order.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }

  Rng substream(std::initializer_list<std::uint64_t> key) const {
    std::uint64_t h = splitmix64(seed_ ^ 0x5bd1e9955bd1e995ULL);
    for (auto k : key) h = splitmix64(h ^ splitmix64(k));
    return Rng(h);
  }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [lo, hi).
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer on [0, bound).
  std::size_t index(std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(engine_);
  }

  /// Uniformly random permutation of 0..n-1 (Fisher-Yates).
  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[index(i)]);
    return p;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace relsort
