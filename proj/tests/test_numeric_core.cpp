#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cm3/linalg.hpp"
#include "cm3/rng.hpp"
#include "cm3/sampler.hpp"

using namespace cm3;

namespace {

RationalMatrix diag3(long a, long b, long c) {
  RationalMatrix m = zero_matrix<Rational>(3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

RationalMatrix ones3() {
  RationalMatrix m(3, 3);
  m.setConstant(Rational(1));
  return m;
}

// Independent of the Eigen expression path: plain nested loops.
Rational naive_trace_product(const std::vector<const RationalMatrix*>& ms) {
  const Eigen::Index n = ms[0]->rows();
  std::vector<std::vector<Rational>> acc(n, std::vector<Rational>(n, Rational(0)));
  for (Eigen::Index i = 0; i < n; ++i) acc[i][i] = 1;
  for (const RationalMatrix* m : ms) {
    std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n, Rational(0)));
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k)
          next[i][j] += acc[i][k] * (*m)(k, j);
    acc = std::move(next);
  }
  Rational t(0);
  for (Eigen::Index i = 0; i < n; ++i) t += acc[i][i];
  return t;
}

}  // namespace

TEST_CASE("trace_word on pinned inputs") {
  const RationalMatrix i3 = identity_matrix<Rational>(3);
  const RationalMatrix a = diag3(-1, 0, 1);
  const CMQuadruple q = cm_point({Rational(0), Rational(1), Rational(2)},
                                 {Rational(0), Rational(0), Rational(0)});

  CHECK(trace_word(word_from_string("A"), i3, q.y) == 3);
  CHECK(trace_word(word_from_string("AB"), a, q.y) == 0);
  CHECK(trace_word(word_from_string("AA"), a, q.y) == 2);
}

TEST_CASE("trace_word agrees with a naive product oracle") {
  Rng rng(17);
  for (int t = 0; t < 30; ++t) {
    auto [x, y] = random_pair(3, rng);
    TraceWord w;
    std::vector<const RationalMatrix*> ms;
    const int len = 1 + static_cast<int>(rng.uniform_int(0, 5));
    for (int i = 0; i < len; ++i) {
      const bool first = rng.uniform_int(0, 1) == 0;
      w.push_back(first ? Letter::First : Letter::Second);
      ms.push_back(first ? &x : &y);
    }
    CHECK(trace_word(w, x, y) == naive_trace_product(ms));
  }
}

TEST_CASE("trace_word rejects bad input") {
  const RationalMatrix i3 = identity_matrix<Rational>(3);
  const RationalMatrix i2 = identity_matrix<Rational>(2);
  CHECK_THROWS_AS(trace_word(word_from_string("AB"), i3, i2), DimensionError);
  CHECK_THROWS_AS(trace_word(TraceWord{}, i3, i3), DomainError);
}

TEST_CASE("commutator on pinned inputs") {
  Rng rng(3);
  auto [x, y] = random_pair(3, rng);
  CHECK(is_zero_matrix(RationalMatrix(commutator(identity_matrix<Rational>(3), y))));
  const RationalMatrix x2 = RationalMatrix(x * x);
  CHECK(is_zero_matrix(RationalMatrix(commutator(x, x2))));

  // diag(0,1,2) against the reciprocal-difference matrix gives J - I
  const CMQuadruple q = cm_point({Rational(0), Rational(1), Rational(2)},
                                 {Rational(0), Rational(0), Rational(0)});
  const RationalMatrix c = commutator(q.x, q.y);
  CHECK(RationalMatrix(c + identity_matrix<Rational>(3)) == ones3());
  CHECK(c.trace() == 0);
}

TEST_CASE("rank on pinned inputs") {
  CHECK(rank(zero_matrix<Rational>(3)) == 0);
  CHECK(rank(identity_matrix<Rational>(3)) == 3);
  CHECK(rank(ones3()) == 1);
}

TEST_CASE("det on pinned inputs") {
  CHECK(det(identity_matrix<Rational>(3)) == 1);
  CHECK(det(diag3(2, 3, 4)) == 24);
  CHECK(det(ones3()) == 0);
}

TEST_CASE("det matches the trace formula on random matrices") {
  Rng rng(29);
  for (int t = 0; t < 50; ++t) {
    auto [m, y] = random_pair(3, rng);
    const Rational t1 = m.trace();
    const Rational t2 = RationalMatrix(m * m).trace();
    const Rational t3 = RationalMatrix(m * m * m).trace();
    CHECK(det(m) == t1 * t1 * t1 / 6 - t2 * t1 / 2 + t3 / 3);
  }
}

TEST_CASE("traceless 3x3 matrices satisfy the reduced cube identity") {
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    auto [x, y] = random_pair(3, rng);
    const RationalMatrix m =
        x - x.trace() / Rational(3) * identity_matrix<Rational>(3);
    const RationalMatrix m3 = RationalMatrix(m * m * m);
    const RationalMatrix rhs =
        frac<Rational>(1, 2) * RationalMatrix(m * m).trace() * m +
        frac<Rational>(1, 3) * m3.trace() * identity_matrix<Rational>(3);
    CHECK(is_zero_matrix(RationalMatrix(m3 - rhs)));
  }
}

TEST_CASE("rank is invariant under invertible multiplication") {
  Rng rng(37);
  for (int t = 0; t < 20; ++t) {
    auto [x, y] = rank_k_pair(t % 2 == 0 ? 2 : 3, rng);
    const RationalMatrix m =
        commutator(x, y) + identity_matrix<Rational>(3);
    RationalMatrix s = identity_matrix<Rational>(3);
    for (int k = 0; k < 3; ++k) s(k, k) = rng.nonzero_rational_int(-4, 4);
    for (int k = 0; k < 4; ++k) {
      const int i = static_cast<int>(rng.uniform_int(0, 2));
      const int j = (i + 1 + static_cast<int>(rng.uniform_int(0, 1))) % 3;
      s.row(i) += rng.rational_int(-3, 3) * s.row(j);
    }
    CHECK(rank(RationalMatrix(s * m)) == rank(m));
    CHECK(rank(RationalMatrix(m * s)) == rank(m));
  }
}

TEST_CASE("trace words are invariant under simultaneous conjugation") {
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    auto [x, y] = random_pair(3, rng);
    RationalMatrix s = identity_matrix<Rational>(3);
    for (int k = 0; k < 5; ++k) {
      const int i = static_cast<int>(rng.uniform_int(0, 2));
      const int j = (i + 1 + static_cast<int>(rng.uniform_int(0, 1))) % 3;
      s.row(i) += rng.rational_int(-3, 3) * s.row(j);
    }
    const RationalMatrix si = inverse(s);
    const RationalMatrix xc = RationalMatrix(s * x * si);
    const RationalMatrix yc = RationalMatrix(s * y * si);
    for (const char* w : {"AAB", "ABAB", "AABBA", "BBB"})
      CHECK(trace_word(word_from_string(w), x, y) ==
            trace_word(word_from_string(w), xc, yc));
  }
}

TEST_CASE("complex rank uses the pivot threshold") {
  TolerancePolicy tol;
  ComplexMatrix m = zero_matrix<Complex>(3);
  m(0, 0) = 1.0;
  m(1, 1) = 0.5;
  m(2, 2) = 1e-14;  // below threshold at scale 1
  CHECK(rank(m, tol) == 2);
  CHECK(std::abs(det(identity_matrix<Complex>(3), tol) - Complex(1.0)) < 1e-12);

  // a pivot inside the guard band is flagged
  m(2, 2) = 3e-9;
  CHECK(rank_guarded(m, tol).ambiguous);
  // clearly separated pivots are not
  m(2, 2) = 1e-3;
  CHECK_FALSE(rank_guarded(m, tol).ambiguous);
  m(2, 2) = 0.0;
  CHECK_FALSE(rank_guarded(m, tol).ambiguous);
  CHECK(rank_guarded(m, tol).value == 2);
}

TEST_CASE("rational parsing and canonical form") {
  CHECK(parse_rational("2/4") == parse_rational("1/2"));
  CHECK(to_string(parse_rational("-6/-4")) == "3/2");
  CHECK(to_string(parse_rational("5")) == "5");
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  const Rational q = frac<Rational>(2, 6);
  CHECK(q.get_num() == 1);
  CHECK(q.get_den() == 3);
}
