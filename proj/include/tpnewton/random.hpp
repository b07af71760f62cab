#pragma once

#include <cstdint>
#include <random>

namespace tpn {

/// Deterministic generator used for every seeded draw in the project.
///
/// Raw outputs come from std::mt19937_64, whose sequence is fixed by the C++
/// standard. The mappings below are written out explicitly (the standard
/// distributions are implementation-defined), so a given seed produces the
/// same numbers on every platform and can be reproduced in other languages:
///   uniform01()        = (x >> 11) * 2^-53
///   uniform_int(a, b)  = a + x mod (b-a+1), rejecting x >= 2^64 - 2^64 mod (b-a+1)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for a (seed, tag) pair.
  static Rng stream(std::uint64_t seed, std::uint64_t tag) {
    return Rng(seed ^ (tag * 0x9E3779B97F4A7C15ULL));
  }

  std::uint64_t next() { return engine_(); }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on [-1, 1).
  double symmetric() { return 2.0 * uniform01() - 1.0; }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span + 1) % span;
    std::uint64_t x = next();
    while (x > limit) x = next();
    return lo + static_cast<std::int64_t>(x % span);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tpn
