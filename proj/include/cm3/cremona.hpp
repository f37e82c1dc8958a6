#pragma once

#include <utility>
#include <vector>

#include "cm3/invariants.hpp"
#include "cm3/matrix.hpp"

namespace cm3 {

// Generators of the unimodular-automorphism action on pairs:
//   Phi_p: (X, Y) -> (X + p(Y), Y)
//   Psi_q: (X, Y) -> (X, Y + q(X))
//   Theta_M: (X, Y) -> (aX + bY, cX + dY) for M = [[a,b],[c,d]] in SL2.
template <class S>
struct Move {
  enum class Kind { Phi, Psi, Theta };

  Kind kind = Kind::Phi;
  std::vector<S> coeffs;       // Phi/Psi polynomial, lowest degree first
  Eigen::Matrix<S, 2, 2> m;    // Theta

  static Move phi(std::vector<S> c) {
    Move mv;
    mv.kind = Kind::Phi;
    mv.coeffs = std::move(c);
    return mv;
  }
  static Move psi(std::vector<S> c) {
    Move mv;
    mv.kind = Kind::Psi;
    mv.coeffs = std::move(c);
    return mv;
  }
  static Move phi_quad(const S& alpha) { return phi({S(0), S(0), alpha}); }
  static Move psi_quad(const S& alpha) { return psi({S(0), S(0), alpha}); }
  static Move phi_lin(const S& beta) { return phi({S(0), beta}); }
  static Move psi_lin(const S& beta) { return psi({S(0), beta}); }

  static Move theta(const Eigen::Matrix<S, 2, 2>& mat,
                    const TolerancePolicy& tol = {}) {
    const S d = mat(0, 0) * mat(1, 1) - mat(0, 1) * mat(1, 0);
    double scale = 1.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        scale = std::max(scale, ScalarTraits<S>::magnitude(mat(i, j)));
    if (!ScalarTraits<S>::is_zero(S(d - S(1)), tol, scale * scale))
      throw ConstructionError("theta move: determinant must be 1");
    Move mv;
    mv.kind = Kind::Theta;
    mv.m = mat;
    return mv;
  }
};

template <class S>
using GroupWord = std::vector<Move<S>>;

namespace detail {

template <class S>
DenseMatrix<S> eval_poly(const std::vector<S>& coeffs,
                         const DenseMatrix<S>& arg) {
  const Eigen::Index n = arg.rows();
  DenseMatrix<S> acc = zero_matrix<S>(n);
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc = DenseMatrix<S>(acc * arg);
    acc += coeffs[k] * identity_matrix<S>(n);
  }
  return acc;
}

}  // namespace detail

template <class S>
std::pair<DenseMatrix<S>, DenseMatrix<S>> act_matrices(
    const Move<S>& mv, const DenseMatrix<S>& x, const DenseMatrix<S>& y) {
  require_same_shape(x, y, "act_matrices");
  using Kind = typename Move<S>::Kind;
  switch (mv.kind) {
    case Kind::Phi:
      return {DenseMatrix<S>(x + detail::eval_poly(mv.coeffs, y)), y};
    case Kind::Psi:
      return {x, DenseMatrix<S>(y + detail::eval_poly(mv.coeffs, x))};
    case Kind::Theta:
      return {DenseMatrix<S>(mv.m(0, 0) * x + mv.m(0, 1) * y),
              DenseMatrix<S>(mv.m(1, 0) * x + mv.m(1, 1) * y)};
  }
  throw Error("act_matrices: unreachable");
}

template <class S>
std::pair<DenseMatrix<S>, DenseMatrix<S>> act_matrices(
    const GroupWord<S>& word, const DenseMatrix<S>& x,
    const DenseMatrix<S>& y) {
  std::pair<DenseMatrix<S>, DenseMatrix<S>> cur{x, y};
  for (const auto& mv : word) cur = act_matrices(mv, cur.first, cur.second);
  return cur;
}

// Formal inverse: reversed order, negated polynomials, inverted matrices.
template <class S>
GroupWord<S> word_inverse(const GroupWord<S>& word) {
  GroupWord<S> inv;
  inv.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    Move<S> mv = *it;
    if (mv.kind == Move<S>::Kind::Theta) {
      Eigen::Matrix<S, 2, 2> mi;
      mi(0, 0) = mv.m(1, 1);
      mi(0, 1) = S(0) - mv.m(0, 1);
      mi(1, 0) = S(0) - mv.m(1, 0);
      mi(1, 1) = mv.m(0, 0);
      mv.m = mi;  // adjugate equals inverse at determinant 1
    } else {
      for (S& c : mv.coeffs) c = S(0) - c;
    }
    inv.push_back(std::move(mv));
  }
  return inv;
}

namespace detail {

// Tuple-level quadratic moves, exact for the pair's own v.  The constant "v"
// slot below is -3 on the rank-one stratum and 0 on the commuting variety.
template <class S>
Tuple7<S> phi_quad_tuple(const Tuple7<S>& t, const S& v, const S& al) {
  const S &a3 = t.a3, &a4 = t.a4, &a5 = t.a5, &a6 = t.a6, &a7 = t.a7,
          &a8 = t.a8, &a9 = t.a9;
  Tuple7<S> o = t;
  o.a3 = a3 + S(2) * al * a8 + frac<S>(1, 6) * al * al * a5 * a5;
  o.a4 = a4 + al * a9;
  o.a6 = a6 + al * (a4 * a4 - frac<S>(1, 2) * a3 * a5 + v) +
         al * al * (a4 * a9 - frac<S>(1, 2) * a5 * a8) +
         al * al * al *
             (frac<S>(1, 3) * a9 * a9 - frac<S>(1, 36) * a5 * a5 * a5);
  o.a7 = a7 + frac<S>(1, 3) * al * a4 * a5 +
         frac<S>(1, 6) * al * al * a5 * a9;
  o.a8 = a8 + frac<S>(1, 6) * al * a5 * a5;
  return o;
}

template <class S>
Tuple7<S> psi_quad_tuple(const Tuple7<S>& t, const S& v, const S& al) {
  const S &a3 = t.a3, &a4 = t.a4, &a5 = t.a5, &a6 = t.a6, &a7 = t.a7,
          &a8 = t.a8, &a9 = t.a9;
  Tuple7<S> o = t;
  o.a4 = a4 + al * a6;
  o.a5 = a5 + S(2) * al * a7 + frac<S>(1, 6) * al * al * a3 * a3;
  o.a7 = a7 + frac<S>(1, 6) * al * a3 * a3;
  o.a8 = a8 + frac<S>(1, 3) * al * a3 * a4 +
         frac<S>(1, 6) * al * al * a3 * a6;
  o.a9 = a9 + al * (a4 * a4 - frac<S>(1, 2) * a3 * a5 + v) +
         al * al * (a4 * a6 - frac<S>(1, 2) * a3 * a7) +
         al * al * al *
             (frac<S>(1, 3) * a6 * a6 - frac<S>(1, 36) * a3 * a3 * a3);
  return o;
}

// (a3, a4, a5) transforms as a binary quadratic Gram matrix, (a6..a9) as a
// binary cubic's symmetric tensor.
template <class S>
Tuple7<S> theta_tuple(const Tuple7<S>& t, const Eigen::Matrix<S, 2, 2>& m) {
  const S &a = m(0, 0), &b = m(0, 1), &c = m(1, 0), &d = m(1, 1);
  Tuple7<S> o;
  o.a3 = a * a * t.a3 + S(2) * a * b * t.a4 + b * b * t.a5;
  o.a4 = a * c * t.a3 + (a * d + b * c) * t.a4 + b * d * t.a5;
  o.a5 = c * c * t.a3 + S(2) * c * d * t.a4 + d * d * t.a5;
  o.a6 = a * a * a * t.a6 + S(3) * a * a * b * t.a7 + S(3) * a * b * b * t.a8 +
         b * b * b * t.a9;
  o.a7 = a * a * c * t.a6 + (a * a * d + S(2) * a * b * c) * t.a7 +
         (b * b * c + S(2) * a * b * d) * t.a8 + b * b * d * t.a9;
  o.a8 = a * c * c * t.a6 + (S(2) * a * c * d + b * c * c) * t.a7 +
         (a * d * d + S(2) * b * c * d) * t.a8 + b * d * d * t.a9;
  o.a9 = c * c * c * t.a6 + S(3) * c * c * d * t.a7 + S(3) * c * d * d * t.a8 +
         d * d * d * t.a9;
  return o;
}

}  // namespace detail

// Action on the seven-tuple coordinates (the two trace coordinates are held
// at zero; constants act trivially there).  Phi/Psi polynomials of degree
// >= 3 have no closed tuple form here and act only at matrix level.
template <class S>
Tuple7<S> act_tuple(const Move<S>& mv, const Tuple7<S>& t, const S& v) {
  using Kind = typename Move<S>::Kind;
  if (mv.kind == Kind::Theta) return detail::theta_tuple(t, mv.m);
  if (mv.coeffs.size() > 3)
    throw UnsupportedMoveError(
        "act_tuple: polynomial moves of degree >= 3 act only on matrices");
  Tuple7<S> cur = t;
  if (mv.coeffs.size() >= 3 && !(mv.coeffs[2] == S(0))) {
    cur = mv.kind == Kind::Phi
              ? detail::phi_quad_tuple(cur, v, mv.coeffs[2])
              : detail::psi_quad_tuple(cur, v, mv.coeffs[2]);
  }
  if (mv.coeffs.size() >= 2 && !(mv.coeffs[1] == S(0))) {
    Eigen::Matrix<S, 2, 2> m;
    if (mv.kind == Kind::Phi) {
      m << S(1), mv.coeffs[1], S(0), S(1);
    } else {
      m << S(1), S(0), mv.coeffs[1], S(1);
    }
    cur = detail::theta_tuple(cur, m);
  }
  return cur;
}

template <class S>
Tuple7<S> act_tuple(const GroupWord<S>& word, const Tuple7<S>& t, const S& v) {
  Tuple7<S> cur = t;
  for (const auto& mv : word) cur = act_tuple(mv, cur, v);
  return cur;
}

// One trial of the two-level agreement oracle: push the witness pair through
// the matrices, the witness tuple through the formulas, compare.
template <class S>
std::array<S, 7> consistency_residuals(const Move<S>& mv,
                                       const DenseMatrix<S>& x,
                                       const DenseMatrix<S>& y) {
  auto [a, b] = traceless_pair(x, y);
  const InvariantTuple<S> before = invariant_tuple(a, b);
  const Tuple7<S> via_tuple = act_tuple(mv, before.seven(), before.v);
  auto [a2, b2] = act_matrices(mv, a, b);
  const Tuple7<S> via_matrices = invariant_tuple(a2, b2).seven();
  std::array<S, 7> out;
  const auto lhs = via_tuple.to_array();
  const auto rhs = via_matrices.to_array();
  for (int i = 0; i < 7; ++i) out[i] = lhs[i] - rhs[i];
  return out;
}

}  // namespace cm3
