#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace aeinterp {

/// Portable seeded stream. std::mt19937_64 output is fully specified by the
/// standard; the distribution mappings below are spelled out here instead of
/// using <random> distributions, whose algorithms are implementation-defined.
///
///   uniform01():  (x >> 11) * 2^-53, in [0, 1)
///   normal():     Box-Muller on (u1, u2), u1 = 1 - uniform01(), emitting
///                 r cos(2 pi u2) then the cached r sin(2 pi u2)
///   below(n):     rejection sampling on the top bits, uniform in [0, n)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = 0;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace aeinterp
