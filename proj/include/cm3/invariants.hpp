#pragma once

#include <array>
#include <utility>

#include "cm3/matrix.hpp"

namespace cm3 {

// The seven coordinates a3..a9 that carry the orbit structure once the two
// trace coordinates are normalized away.
template <class S>
struct Tuple7 {
  S a3{}, a4{}, a5{}, a6{}, a7{}, a8{}, a9{};

  std::array<S, 7> to_array() const { return {a3, a4, a5, a6, a7, a8, a9}; }
  static Tuple7 from_array(const std::array<S, 7>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
  }
  bool operator==(const Tuple7&) const = default;
};

// The nine generators plus the two deeper invariants v, w.
template <class S>
struct InvariantTuple {
  std::array<S, 9> a{};  // a[0] = a1, ..., a[8] = a9
  S v{}, w{};

  Tuple7<S> seven() const {
    return {a[2], a[3], a[4], a[5], a[6], a[7], a[8]};
  }
};

// Named trace monomials used by the cross-check identities; computed by
// brute trace-word evaluation so the identities stay genuine checks.
template <class S>
struct AuxTraces {
  S a3b{}, ab3{}, a3b2{}, a2b3{}, a3b3{}, a2b2{}, abab{}, a4b2{}, a3bab{},
      a2ba2b{}, a2b2ab{}, a2bab2{}, ababab{};
};

// A = X - tr(X)/n * I, B likewise; commutators are unchanged.
template <class S>
std::pair<DenseMatrix<S>, DenseMatrix<S>> traceless_pair(
    const DenseMatrix<S>& x, const DenseMatrix<S>& y) {
  require_same_shape(x, y, "traceless_pair");
  const Eigen::Index n = x.rows();
  const S tx = x.trace() / S(static_cast<long>(n));
  const S ty = y.trace() / S(static_cast<long>(n));
  DenseMatrix<S> a = x - tx * identity_matrix<S>(n);
  DenseMatrix<S> b = y - ty * identity_matrix<S>(n);
  return {std::move(a), std::move(b)};
}

// v = -1/2 tr([X,Y]^2), w = 1/3 tr([X,Y]^3); the commutator form is cheaper
// than the trace-monomial differences and identical for the traceless pair.
template <class S>
std::pair<S, S> vw(const DenseMatrix<S>& x, const DenseMatrix<S>& y) {
  DenseMatrix<S> c = commutator(x, y);
  DenseMatrix<S> c2 = c * c;
  const S v = -c2.trace() / S(2);
  const S w = DenseMatrix<S>(c2 * c).trace() / S(3);
  return {v, w};
}

template <class S>
InvariantTuple<S> invariant_tuple(const DenseMatrix<S>& x,
                                  const DenseMatrix<S>& y) {
  require_same_shape(x, y, "invariant_tuple");
  auto [a, b] = traceless_pair(x, y);
  InvariantTuple<S> t;
  t.a[0] = x.trace();
  t.a[1] = y.trace();
  DenseMatrix<S> aa = a * a;
  DenseMatrix<S> ab = a * b;
  DenseMatrix<S> bb = b * b;
  t.a[2] = aa.trace();
  t.a[3] = ab.trace();
  t.a[4] = bb.trace();
  t.a[5] = DenseMatrix<S>(aa * a).trace();
  t.a[6] = DenseMatrix<S>(aa * b).trace();
  t.a[7] = DenseMatrix<S>(ab * b).trace();
  t.a[8] = DenseMatrix<S>(bb * b).trace();
  auto [v, w] = vw(a, b);
  t.v = v;
  t.w = w;
  return t;
}

template <class S>
AuxTraces<S> aux_traces(const DenseMatrix<S>& a, const DenseMatrix<S>& b,
                        const TolerancePolicy& tol = {}) {
  require_same_shape(a, b, "aux_traces");
  const double scale = std::max(matrix_scale(a), matrix_scale(b));
  if (!ScalarTraits<S>::is_zero(a.trace(), tol, scale) ||
      !ScalarTraits<S>::is_zero(b.trace(), tol, scale))
    throw DomainError("aux_traces: inputs must be traceless");
  const auto tw = [&](const char* word) {
    return trace_word(word_from_string(word), a, b);
  };
  AuxTraces<S> t;
  t.a3b = tw("AAAB");
  t.ab3 = tw("ABBB");
  t.a3b2 = tw("AAABB");
  t.a2b3 = tw("AABBB");
  t.a3b3 = tw("AAABBB");
  t.a2b2 = tw("AABB");
  t.abab = tw("ABAB");
  t.a4b2 = tw("AAAABB");
  t.a3bab = tw("AAABAB");
  t.a2ba2b = tw("AABAAB");
  t.a2b2ab = tw("AABBAB");
  t.a2bab2 = tw("AABABB");
  t.ababab = tw("ABABAB");
  return t;
}

template <class S>
double tuple_scale(const Tuple7<S>& t) {
  double s = 0.0;
  for (const S& x : t.to_array())
    s = std::max(s, ScalarTraits<S>::magnitude(x));
  return s;
}

}  // namespace cm3
