#pragma once

#include <array>
#include <string>

#include "cm3/invariants.hpp"
#include "cm3/linalg.hpp"

namespace cm3 {

// Residual conventions: printed left-hand side minus right-hand side; entry
// k of eval_r matches entry k of eval_id1z at v = -3 and of eval_id2z at
// v = 0 componentwise.

// Rank-one stratum relation system (five polynomials), written out directly
// so the r-polynomial route below stays an independent cross-check.
template <class S>
std::array<S, 5> eval_id1z(const Tuple7<S>& t) {
  const S &a3 = t.a3, &a4 = t.a4, &a5 = t.a5, &a6 = t.a6, &a7 = t.a7,
          &a8 = t.a8, &a9 = t.a9;
  return {
      a3 * a9 - S(2) * a4 * a8 + a5 * a7,
      a5 * a6 - S(2) * a4 * a7 + a3 * a8,
      S(9) * a3 - a3 * a4 * a4 + a3 * a3 * a5 + S(6) * a6 * a8 -
          S(6) * a7 * a7,
      S(9) * a4 - a4 * a4 * a4 + a3 * a4 * a5 + S(3) * a6 * a9 -
          S(3) * a7 * a8,
      S(9) * a5 - a4 * a4 * a5 + a3 * a5 * a5 + S(6) * a7 * a9 -
          S(6) * a8 * a8,
  };
}

// Homogeneous system cutting out the commuting variety's tuple image.
template <class S>
std::array<S, 5> eval_id2z(const Tuple7<S>& t) {
  const S &a3 = t.a3, &a4 = t.a4, &a5 = t.a5, &a6 = t.a6, &a7 = t.a7,
          &a8 = t.a8, &a9 = t.a9;
  return {
      a3 * a9 - S(2) * a4 * a8 + a5 * a7,
      a5 * a6 - S(2) * a4 * a7 + a3 * a8,
      a3 * a3 * a5 - a3 * a4 * a4 + S(6) * a6 * a8 - S(6) * a7 * a7,
      a3 * a4 * a5 - a4 * a4 * a4 + S(3) * a6 * a9 - S(3) * a7 * a8,
      a3 * a5 * a5 - a4 * a4 * a5 + S(6) * a7 * a9 - S(6) * a8 * a8,
  };
}

// The determinant-combination polynomials; at v = -3 they reproduce the
// rank-one system, at v = 0 the homogeneous one.
template <class S>
std::array<S, 5> eval_r(const Tuple7<S>& t, const S& v) {
  const S &a3 = t.a3, &a4 = t.a4, &a5 = t.a5, &a6 = t.a6, &a7 = t.a7,
          &a8 = t.a8, &a9 = t.a9;
  const S core = (a3 * a5 - a4 * a4) - S(3) * v;
  return {
      (a3 * a9 - a4 * a8) - (a4 * a8 - a5 * a7),
      (a3 * a8 - a4 * a7) - (a4 * a7 - a5 * a6),
      a3 * core + S(6) * (a6 * a8 - a7 * a7),
      a4 * core + S(3) * (a6 * a9 - a7 * a8),
      a5 * core + S(6) * (a7 * a9 - a8 * a8),
  };
}

template <class S>
S eval_new_relation(const Tuple7<S>& t, const S& v, const S& w) {
  const auto r = eval_r(t, v);
  return w * w + frac<S>(4, 27) * v * v * v -
         frac<S>(1, 27) * (r[2] * r[4] - r[3] * r[3]) -
         frac<S>(1, 18) *
             (t.a3 * r[0] * r[0] - S(2) * t.a4 * r[0] * r[1] +
              t.a5 * r[1] * r[1]);
}

// The earlier form of the defining relation, kept as an independent route:
// evaluated through its own determinant building blocks, not through eval_r.
template <class S>
S eval_old_relation(const Tuple7<S>& t, const S& v, const S& w) {
  const S &a3 = t.a3, &a4 = t.a4, &a5 = t.a5, &a6 = t.a6, &a7 = t.a7,
          &a8 = t.a8, &a9 = t.a9;
  const S u = a3 * a5 - a4 * a4;
  // det [[a3,a4,a5],[a6,a7,a8],[a7,a8,a9]]
  const S d = a3 * (a7 * a9 - a8 * a8) - a4 * (a6 * a9 - a7 * a8) +
              a5 * (a6 * a8 - a7 * a7);
  const S w1 = u * u * u;
  const S w2 = u * u * v;
  const S w3p = u * d;
  const S w3pp = S(5) * (a5 * a5 * a5 * a6 * a6 + a3 * a3 * a3 * a9 * a9) -
                 S(30) * (a5 * a5 * a4 * a7 * a6 + a3 * a3 * a4 * a8 * a9) -
                 S(2) * (S(2) * a4 * a4 * a4 + S(3) * a3 * a4 * a5) *
                     (S(9) * a7 * a8 + a6 * a9) +
                 S(3) * (S(4) * a5 * a4 * a4 + a5 * a5 * a3) *
                     (S(3) * a7 * a7 + S(2) * a8 * a6) +
                 S(3) * (S(4) * a4 * a4 * a3 + a3 * a3 * a5) *
                     (S(3) * a8 * a8 + S(2) * a7 * a9);
  const S w4 = u * v * v;
  const S w5 = v * d;
  // discriminant of the cubic form with coefficients (a6, a7, a8, a9)
  const S w6 = (a6 * a9 - a7 * a8) * (a6 * a9 - a7 * a8) -
               S(4) * (a7 * a9 - a8 * a8) * (a6 * a8 - a7 * a7);
  const S w7 = v * v * v;
  return w * w - frac<S>(1, 27) * w1 + frac<S>(2, 9) * w2 -
         frac<S>(4, 15) * w3p - frac<S>(1, 90) * w3pp - frac<S>(1, 3) * w4 +
         frac<S>(2, 3) * w5 + frac<S>(1, 3) * w6 + frac<S>(4, 27) * w7;
}

enum class Stratum { CM, Prime, DoublePrime, Commuting };

inline const char* to_string(Stratum s) {
  switch (s) {
    case Stratum::CM: return "CM";
    case Stratum::Prime: return "PRIME";
    case Stratum::DoublePrime: return "DOUBLE_PRIME";
    case Stratum::Commuting: return "COMMUTING";
  }
  return "?";
}

template <class S>
Stratum classify_stratum(const DenseMatrix<S>& x, const DenseMatrix<S>& y,
                         const TolerancePolicy& tol = {}) {
  require_same_shape(x, y, "classify_stratum");
  DenseMatrix<S> c = commutator(x, y);
  const double scale = std::max(1.0, matrix_scale(x) * matrix_scale(y));
  bool commuting = true;
  for (Eigen::Index i = 0; i < c.rows() && commuting; ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j)
      if (!ScalarTraits<S>::is_zero(c(i, j), tol, scale)) {
        commuting = false;
        break;
      }
  if (commuting) return Stratum::Commuting;
  DenseMatrix<S> shifted = c + identity_matrix<S>(c.rows());
  int rk;
  if constexpr (ScalarTraits<S>::exact) {
    rk = rank(shifted, tol);
  } else {
    const RankDecision d = rank_guarded(shifted, tol);
    if (d.ambiguous)
      throw AmbiguousError(
          "classify_stratum: rank decision within tolerance of a boundary");
    rk = d.value;
  }
  switch (rk) {
    case 1: return Stratum::CM;
    case 2: return Stratum::Prime;
    case 3: return Stratum::DoublePrime;
    default:
      // rank([X,Y]+I) = 0 would force tr([X,Y]) = -n, impossible
      throw Error("classify_stratum: commutator shifted by identity has rank " +
                  std::to_string(rk));
  }
}

// w^2 + (4/27) v^3 = 0 — the parameter curve of the deformation family.
template <class S>
bool on_cuspidal_curve(const S& v, const S& w, const TolerancePolicy& tol = {}) {
  const S res = w * w + frac<S>(4, 27) * v * v * v;
  const double scale = ScalarTraits<S>::magnitude(w) * ScalarTraits<S>::magnitude(w) +
                       ScalarTraits<S>::magnitude(v) * ScalarTraits<S>::magnitude(v) *
                           ScalarTraits<S>::magnitude(v);
  return ScalarTraits<S>::is_zero(res, tol, scale);
}

template <class S>
struct CPrimeCheck {
  bool rank_is_2 = false;
  S residual{};  // 1 + v + w
};

// Both facets of the rank-two criterion, reported separately so each
// direction of the equivalence is testable.
template <class S>
CPrimeCheck<S> check_cprime_criterion(const DenseMatrix<S>& x,
                                      const DenseMatrix<S>& y,
                                      const TolerancePolicy& tol = {}) {
  require_same_shape(x, y, "check_cprime_criterion");
  CPrimeCheck<S> out;
  DenseMatrix<S> shifted =
      commutator(x, y) + identity_matrix<S>(x.rows());
  out.rank_is_2 = rank(shifted, tol) == 2;
  auto [v, w] = vw(x, y);
  out.residual = S(1) + v + w;
  return out;
}

}  // namespace cm3
