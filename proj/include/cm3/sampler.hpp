#pragma once

#include <utility>
#include <vector>

#include "cm3/linalg.hpp"
#include "cm3/matrix.hpp"
#include "cm3/rng.hpp"

namespace cm3 {

// (X, Y, c, r) with XY - YX + I = c r exactly; taking traces forces r c = n.
struct CMQuadruple {
  RationalMatrix x, y;
  ColVec<Rational> c;
  RowVec<Rational> r;

  int n() const { return static_cast<int>(x.rows()); }
};

// Standard rank-one construction: X = diag(xs), Y_ij = 1/(x_i - x_j) off
// the diagonal, c and r all ones.  Then [X,Y] + I is the all-ones matrix.
inline CMQuadruple cm_point(const std::vector<Rational>& xs,
                            const std::vector<Rational>& y_diag) {
  const int n = static_cast<int>(xs.size());
  if (n < 2) throw ConstructionError("cm_point: need dimension >= 2");
  if (y_diag.size() != xs.size())
    throw DimensionError("cm_point: diagonal length mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (xs[i] == xs[j])
        throw ConstructionError("cm_point: eigenvalues must be distinct");

  CMQuadruple q;
  q.x = zero_matrix<Rational>(n);
  q.y = zero_matrix<Rational>(n);
  for (int i = 0; i < n; ++i) {
    q.x(i, i) = xs[i];
    q.y(i, i) = y_diag[i];
    for (int j = 0; j < n; ++j)
      if (i != j) q.y(i, j) = Rational(1) / (xs[i] - xs[j]);
  }
  q.c = ColVec<Rational>::Constant(n, 1, Rational(1));
  q.r = RowVec<Rational>::Constant(1, n, Rational(1));

  RationalMatrix resid =
      q.x * q.y - q.y * q.x + identity_matrix<Rational>(n) - q.c * q.r;
  if (!is_zero_matrix(resid))
    throw ConstructionError("cm_point: defining equation violated");
  return q;
}

inline CMQuadruple random_cm_point(int n, Rng& rng) {
  std::vector<Rational> xs, yd;
  // distinct rationals: distinct integers plus an optional shared offset
  std::vector<long> pool;
  while (static_cast<int>(pool.size()) < n) {
    long v = rng.uniform_int(-20, 20);
    bool dup = false;
    for (long p : pool) dup = dup || p == v;
    if (!dup) pool.push_back(v);
  }
  for (int i = 0; i < n; ++i) {
    xs.push_back(Rational(pool[i]));
    yd.push_back(rng.rational_int(-8, 8));
  }
  return cm_point(xs, yd);
}

enum class CommutingFamily { SimultaneousDiagonal, PolynomialInX, NilpotentJordan };

inline const char* to_string(CommutingFamily f) {
  switch (f) {
    case CommutingFamily::SimultaneousDiagonal: return "simultaneous-diagonal";
    case CommutingFamily::PolynomialInX: return "polynomial-in-x";
    case CommutingFamily::NilpotentJordan: return "nilpotent-jordan";
  }
  return "?";
}

inline CommutingFamily commuting_family_from_string(const std::string& s) {
  if (s == "simultaneous-diagonal") return CommutingFamily::SimultaneousDiagonal;
  if (s == "polynomial-in-x") return CommutingFamily::PolynomialInX;
  if (s == "nilpotent-jordan") return CommutingFamily::NilpotentJordan;
  throw ParseError("unknown commuting family: " + s);
}

namespace detail {

inline RationalMatrix random_int_matrix(int n, Rng& rng, long lo = -10,
                                        long hi = 10) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.rational_int(lo, hi);
  return m;
}

// Integer matrix with determinant +-1 (product of elementary shears), so
// conjugation stays exact and denominator-free.
inline RationalMatrix random_unimodular(int n, Rng& rng, int steps = 4) {
  RationalMatrix m = identity_matrix<Rational>(n);
  for (int s = 0; s < steps; ++s) {
    const int i = static_cast<int>(rng.uniform_int(0, n - 1));
    int j = static_cast<int>(rng.uniform_int(0, n - 2));
    if (j >= i) ++j;
    const Rational f = rng.rational_int(-2, 2);
    m.row(i) += f * m.row(j);
  }
  return m;
}

inline RationalMatrix conjugate(const RationalMatrix& m,
                                const RationalMatrix& s) {
  return RationalMatrix(cm3::inverse(s) * m * s);
}

}  // namespace detail

// Exact commuting pairs across three shapes: simultaneously diagonal,
// Y a polynomial in a dense X, and a non-diagonalizable nilpotent block.
inline std::pair<RationalMatrix, RationalMatrix> commuting_pair(
    CommutingFamily family, Rng& rng) {
  const int n = 3;
  switch (family) {
    case CommutingFamily::SimultaneousDiagonal: {
      RationalMatrix x = zero_matrix<Rational>(n), y = zero_matrix<Rational>(n);
      for (int i = 0; i < n; ++i) {
        x(i, i) = rng.rational_int(-9, 9);
        y(i, i) = rng.rational_frac(9, 4);
      }
      RationalMatrix s = detail::random_unimodular(n, rng);
      return {detail::conjugate(x, s), detail::conjugate(y, s)};
    }
    case CommutingFamily::PolynomialInX: {
      RationalMatrix x = detail::random_int_matrix(n, rng, -6, 6);
      const Rational c2 = rng.rational_int(-3, 3);
      const Rational c1 = rng.rational_int(-5, 5);
      const Rational c0 = rng.rational_int(-5, 5);
      RationalMatrix y =
          c2 * (x * x) + c1 * x + c0 * identity_matrix<Rational>(n);
      return {x, y};
    }
    case CommutingFamily::NilpotentJordan: {
      RationalMatrix j = zero_matrix<Rational>(n);
      j(0, 1) = 1;
      j(1, 2) = 1;
      const Rational c2 = rng.nonzero_rational_int(-4, 4);
      const Rational c1 = rng.rational_int(-4, 4);
      RationalMatrix y = c2 * (j * j) + c1 * j;
      RationalMatrix s = detail::random_unimodular(n, rng);
      return {detail::conjugate(j, s), detail::conjugate(y, s)};
    }
  }
  throw Error("commuting_pair: unreachable");
}

// X = diag(distinct), Y_ij = Z_ij / (x_i - x_j) for a hollow Z chosen so
// that [X,Y] + I = I + Z has the requested rank.
inline std::pair<RationalMatrix, RationalMatrix> rank_k_pair(int k, Rng& rng) {
  const int n = 3;
  if (k != 2 && k != 3) throw ConstructionError("rank_k_pair: k must be 2 or 3");
  for (int attempt = 0; attempt < 64; ++attempt) {
    RationalMatrix z = zero_matrix<Rational>(n);
    if (k == 2) {
      // rows 0 and 1 of I + Z made equal; row 2 kept independent
      const Rational t = rng.rational_int(-6, 6);
      z(0, 1) = 1;
      z(0, 2) = t;
      z(1, 0) = 1;
      z(1, 2) = t;
      z(2, 0) = rng.rational_int(-6, 6);
      z(2, 1) = rng.rational_int(-6, 6);
      if (z(2, 0) == z(2, 1)) z(2, 1) += 1;
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) z(i, j) = rng.rational_int(-6, 6);
    }
    RationalMatrix shifted = identity_matrix<Rational>(n) + z;
    if (rank(shifted) != k) continue;

    std::vector<long> xs;
    while (static_cast<int>(xs.size()) < n) {
      long v = rng.uniform_int(-9, 9);
      bool dup = false;
      for (long p : xs) dup = dup || p == v;
      if (!dup) xs.push_back(v);
    }
    RationalMatrix x = zero_matrix<Rational>(n), y = zero_matrix<Rational>(n);
    for (int i = 0; i < n; ++i) {
      x(i, i) = Rational(xs[i]);
      y(i, i) = rng.rational_int(-5, 5);
      for (int j = 0; j < n; ++j)
        if (i != j) y(i, j) = z(i, j) / Rational(xs[i] - xs[j]);
    }
    RationalMatrix check =
        commutator<Rational>(x, y) + identity_matrix<Rational>(n) - shifted;
    if (!is_zero_matrix(check))
      throw ConstructionError("rank_k_pair: commutator construction failed");
    return {x, y};
  }
  throw ConstructionError("rank_k_pair: no admissible hollow matrix found");
}

inline std::pair<RationalMatrix, RationalMatrix> random_pair(int n, Rng& rng,
                                                             long lo = -10,
                                                             long hi = 10) {
  return {detail::random_int_matrix(n, rng, lo, hi),
          detail::random_int_matrix(n, rng, lo, hi)};
}

}  // namespace cm3
