#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace sam {

/// splitmix64 finalizer; used to derive substream seeds from (master, path).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for the substream identified by `path` under `master`.
/// The derivation is a pure function of its arguments, so streams are
/// reproducible no matter how work is scheduled across threads.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = mix64(master ^ 0x53414d53494d2121ULL);
  for (std::uint64_t p : path) s = mix64(s ^ mix64(p));
  return s;
}

/// A seeded random stream with portable integer/real sampling.
///
/// The engine is std::mt19937_64 (fully specified by the standard); the
/// sampling helpers below avoid std::uniform_*_distribution so that a given
/// seed produces the same draws on every platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  static RngStream substream(std::uint64_t master,
                             std::initializer_list<std::uint64_t> path) {
    return RngStream(derive_seed(master, path));
  }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t rem = std::uint64_t(-1) % bound;
    // rejection keeps the result exactly uniform
    for (;;) {
      std::uint64_t x = gen_();
      if (x <= std::uint64_t(-1) - rem) return x % bound;
    }
  }

  std::uint32_t below32(std::uint32_t bound) {
    return static_cast<std::uint32_t>(below(bound));
  }

  /// Uniform double in [0, 1), 53 random bits.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  /// Uniformly random k-subset of [0, n), returned sorted.
  std::vector<std::uint32_t> subset(std::uint32_t n, std::uint32_t k);

  /// Indices i in [0, n) kept independently with probability p (0 < p < 1),
  /// via geometric skip sampling; returned sorted.
  std::vector<std::uint32_t> bernoulli_indices(std::uint32_t n, double p);

 private:
  std::mt19937_64 gen_;
};

}  // namespace sam
