#pragma once

#include <chrono>
#include <string>

#include "cm3/cremona.hpp"
#include "cm3/rng.hpp"

namespace cm3 {

struct ConsistencyReport {
  std::string move_kind;
  int trials = 0;
  int failures = 0;
  double elapsed_ms = 0.0;
};

// Repeated two-level agreement trials on one exact witness pair; each trial
// redraws the move's parameter (quadratic coefficient, or an SL2 matrix from
// two shears) while keeping the move's kind.
inline ConsistencyReport consistency_check(const Move<Rational>& mv,
                                           const RationalMatrix& x,
                                           const RationalMatrix& y, int trials,
                                           std::uint64_t seed) {
  using Kind = Move<Rational>::Kind;
  ConsistencyReport rep;
  rep.trials = trials;
  rep.move_kind = mv.kind == Kind::Theta
                      ? "theta"
                      : (mv.kind == Kind::Phi ? "phi" : "psi");
  const auto start = std::chrono::steady_clock::now();
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(t));
    Move<Rational> drawn = mv;
    if (mv.kind == Kind::Theta) {
      const Rational b = rng.rational_frac(3, 2);
      const Rational c = rng.rational_frac(3, 2);
      Eigen::Matrix<Rational, 2, 2> m;
      m(0, 0) = Rational(1) + b * c;
      m(0, 1) = b;
      m(1, 0) = c;
      m(1, 1) = 1;
      drawn = Move<Rational>::theta(m);
    } else {
      Rational alpha = rng.rational_frac(5, 3);
      if (alpha == 0) alpha = 1;
      drawn = mv.kind == Kind::Phi ? Move<Rational>::phi_quad(alpha)
                                   : Move<Rational>::psi_quad(alpha);
    }
    bool ok = true;
    for (const Rational& r : consistency_residuals(drawn, x, y))
      ok = ok && r == 0;
    if (!ok) ++rep.failures;
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

}  // namespace cm3
