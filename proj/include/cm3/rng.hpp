#pragma once

#include <cstdint>
#include <random>

#include "cm3/scalar.hpp"

namespace cm3 {

// Deterministic random source. Bounded draws are implemented here (not via
// std::uniform_int_distribution) so identical seeds give identical streams
// on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static Rng for_trial(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix(seed, stream));
  }

  std::uint64_t next() { return eng_(); }

  // Uniform on [lo, hi], inclusive, by rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  Rational rational_int(long lo, long hi) {
    return Rational(static_cast<long>(uniform_int(lo, hi)));
  }

  Rational nonzero_rational_int(long lo, long hi) {
    Rational r;
    do {
      r = rational_int(lo, hi);
    } while (r == 0);
    return r;
  }

  // Small non-integer-friendly rational p/q with q in [1, qmax].
  Rational rational_frac(long pmax, long qmax) {
    Rational r(static_cast<long>(uniform_int(-pmax, pmax)),
               static_cast<long>(uniform_int(1, qmax)));
    r.canonicalize();
    return r;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace cm3
