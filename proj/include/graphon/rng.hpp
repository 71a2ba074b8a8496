#pragma once

#include <cstdint>
#include <random>

namespace graphon {

/// Seedable, portable random generator.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard)
/// and maps raw 64-bit words to doubles explicitly, so that identical seeds
/// yield identical draws on every platform. std::uniform_real_distribution
/// is deliberately avoided: its output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform draw in [0, 1) using the top 53 bits of one engine word.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi], inclusive. Derived from uniform().
  int uniform_int(int lo, int hi) {
    const int span = hi - lo + 1;
    int v = lo + static_cast<int>(uniform() * span);
    return v > hi ? hi : v;
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace graphon
