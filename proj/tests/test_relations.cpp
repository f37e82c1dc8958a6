#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cm3/relations.hpp"
#include "cm3/rng.hpp"
#include "cm3/sampler.hpp"

using namespace cm3;

namespace {

Tuple7<Rational> tuple_of(const std::array<long, 7>& v) {
  std::array<Rational, 7> r;
  for (int i = 0; i < 7; ++i) r[i] = Rational(v[i]);
  return Tuple7<Rational>::from_array(r);
}

const Tuple7<Rational> kCmTuple{Rational(2),  Rational(0), Rational(-9, 2),
                                Rational(0),  Rational(0), Rational(0),
                                Rational(0)};

}  // namespace

TEST_CASE("rank-one system on pinned tuples") {
  for (const Rational& r : eval_id1z(tuple_of({0, 0, 0, 0, 0, 0, 0})))
    CHECK(r == 0);
  for (const Rational& r : eval_id1z(kCmTuple)) CHECK(r == 0);

  // a lone a3 leaves exactly the third polynomial nonzero
  const auto res = eval_id1z(tuple_of({1, 0, 0, 0, 0, 0, 0}));
  CHECK(res[0] == 0);
  CHECK(res[1] == 0);
  CHECK(res[2] == 9);
  CHECK(res[3] == 0);
  CHECK(res[4] == 0);
}

TEST_CASE("homogeneous system on pinned tuples") {
  for (const Rational& r : eval_id2z(tuple_of({0, 0, 0, 0, 0, 0, 0})))
    CHECK(r == 0);
  Tuple7<Rational> diag{Rational(2),           Rational(0),
                        frac<Rational>(2, 3),  Rational(0),
                        frac<Rational>(2, 3),  Rational(0),
                        frac<Rational>(-2, 9)};
  for (const Rational& r : eval_id2z(diag)) CHECK(r == 0);

  // the nonzero orbit representatives satisfy the homogeneous system
  Tuple7<Complex> special{0.0, 0.0, std::cbrt(6.0), 0.0, 0.0, 0.0, 1.0};
  for (const Complex& r : eval_id2z(special)) CHECK(std::abs(r) < 1e-12);
  Tuple7<Complex> generic{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0};
  for (const Complex& r : eval_id2z(generic)) CHECK(std::abs(r) < 1e-12);
}

TEST_CASE("determinant-combination polynomials specialize to both systems") {
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    std::array<Rational, 7> a;
    for (auto& x : a) x = rng.rational_frac(8, 3);
    const auto tu = Tuple7<Rational>::from_array(a);
    const auto rm3 = eval_r(tu, Rational(-3));
    const auto r0 = eval_r(tu, Rational(0));
    const auto i1 = eval_id1z(tu);
    const auto i2 = eval_id2z(tu);
    for (int i = 0; i < 5; ++i) {
      CHECK(rm3[i] == i1[i]);
      CHECK(r0[i] == i2[i]);
    }
  }
  // every term carries a generator
  for (int k = -4; k <= 4; ++k)
    for (const Rational& r :
         eval_r(tuple_of({0, 0, 0, 0, 0, 0, 0}), Rational(k)))
      CHECK(r == 0);
}

TEST_CASE("both defining-relation forms vanish on realized tuples") {
  Rng rng(5);
  for (int t = 0; t < 60; ++t) {
    auto [x, y] = random_pair(3, rng);
    const auto iv = invariant_tuple(x, y);
    const Rational oldr = eval_old_relation(iv.seven(), iv.v, iv.w);
    const Rational newr = eval_new_relation(iv.seven(), iv.v, iv.w);
    CHECK(newr == 0);
    CHECK(oldr == 0);
    CHECK(oldr == newr);
  }
}

TEST_CASE("the defining relation vanishes on every stratum") {
  Rng rng(15);
  for (int t = 0; t < 10; ++t) {
    const CMQuadruple q = random_cm_point(3, rng);
    const auto t1 = invariant_tuple(q.x, q.y);
    CHECK(eval_new_relation(t1.seven(), t1.v, t1.w) == 0);
    auto [x2, y2] = rank_k_pair(2, rng);
    const auto t2 = invariant_tuple(x2, y2);
    CHECK(eval_new_relation(t2.seven(), t2.v, t2.w) == 0);
    auto [x3, y3] = rank_k_pair(3, rng);
    const auto t3 = invariant_tuple(x3, y3);
    CHECK(eval_new_relation(t3.seven(), t3.v, t3.w) == 0);
    auto [cx, cy] = commuting_pair(static_cast<CommutingFamily>(t % 3), rng);
    const auto t0 = invariant_tuple(cx, cy);
    CHECK(eval_new_relation(t0.seven(), t0.v, t0.w) == 0);
  }
}

TEST_CASE("defining relation at pinned values") {
  // r = 0, v = -3, w = 2 forces w^2 + 4 v^3 / 27 = 0
  CHECK(eval_new_relation(kCmTuple, Rational(-3), Rational(2)) == 0);
  const auto zero = tuple_of({0, 0, 0, 0, 0, 0, 0});
  CHECK(eval_new_relation(zero, Rational(0), Rational(0)) == 0);
  CHECK(eval_old_relation(zero, Rational(0), Rational(0)) == 0);
}

TEST_CASE("stratum classification") {
  Rng rng(9);
  auto [cx, cy] = commuting_pair(CommutingFamily::SimultaneousDiagonal, rng);
  CHECK(classify_stratum(cx, cy) == Stratum::Commuting);

  const CMQuadruple q = random_cm_point(3, rng);
  CHECK(classify_stratum(q.x, q.y) == Stratum::CM);

  auto [p2x, p2y] = rank_k_pair(2, rng);
  CHECK(classify_stratum(p2x, p2y) == Stratum::Prime);

  auto [p3x, p3y] = rank_k_pair(3, rng);
  CHECK(classify_stratum(p3x, p3y) == Stratum::DoublePrime);
}

TEST_CASE("complex-domain boundary ranks are refused, not resolved") {
  // X, Y with [X,Y] + I nearly rank-deficient: rows 0 and 1 of I + Z agree
  // up to eps, so elimination leaves a pivot inside the guard band
  ComplexMatrix x = zero_matrix<Complex>(3), y = zero_matrix<Complex>(3);
  x(0, 0) = 0.0;
  x(1, 1) = 1.0;
  x(2, 2) = 2.0;
  const double eps = 1e-8;
  ComplexMatrix z = zero_matrix<Complex>(3);
  z(0, 1) = 1.0;
  z(0, 2) = 1.0;
  z(1, 0) = 1.0 + eps;
  z(1, 2) = 1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) y(i, j) = z(i, j) / (x(i, i) - x(j, j));
  CHECK_THROWS_AS(classify_stratum(x, y, TolerancePolicy{}), AmbiguousError);
}

TEST_CASE("cuspidal curve membership") {
  CHECK(on_cuspidal_curve(Rational(-3), Rational(2)));
  CHECK(on_cuspidal_curve(Rational(0), Rational(0)));
  CHECK(on_cuspidal_curve(Rational(-3), Rational(-2)));
  CHECK_FALSE(on_cuspidal_curve(Rational(1), Rational(1)));
  CHECK(on_cuspidal_curve(Complex(-3.0), Complex(2.0)));
}

TEST_CASE("rank-two criterion facets") {
  Rng rng(21);
  auto [x2, y2] = rank_k_pair(2, rng);
  const auto c2 = check_cprime_criterion(x2, y2);
  CHECK(c2.rank_is_2);
  CHECK(c2.residual == 0);

  // the rank-one stratum satisfies 1 + v + w = 0 without having rank two,
  // which is why the criterion also demands v != -3
  const CMQuadruple q = random_cm_point(3, rng);
  const auto c1 = check_cprime_criterion(q.x, q.y);
  CHECK_FALSE(c1.rank_is_2);
  CHECK(c1.residual == 0);

  auto [cx, cy] = commuting_pair(CommutingFamily::PolynomialInX, rng);
  const auto c0 = check_cprime_criterion(cx, cy);
  CHECK(c0.residual == 1);
}

TEST_CASE("scaling weights on tuples, v, w and the r-polynomials") {
  Rng rng(27);
  for (int t = 0; t < 20; ++t) {
    auto [x, y] = random_pair(3, rng);
    Rational al = rng.rational_frac(6, 3);
    if (al == 0) al = Rational(3);
    const auto t0 = invariant_tuple(x, y);
    const auto t1 = invariant_tuple(RationalMatrix(al * x), y);
    const int wts[9] = {1, 0, 2, 1, 0, 3, 2, 1, 0};
    auto pw = [&](int e) {
      Rational p(1);
      for (int i = 0; i < e; ++i) p *= al;
      return p;
    };
    for (int i = 0; i < 9; ++i) CHECK(t1.a[i] == pw(wts[i]) * t0.a[i]);
    CHECK(t1.v == pw(2) * t0.v);
    CHECK(t1.w == pw(3) * t0.w);
    const auto r0 = eval_r(t0.seven(), t0.v);
    const auto r1 = eval_r(t1.seven(), t1.v);
    const int rwts[5] = {2, 3, 4, 3, 2};
    for (int i = 0; i < 5; ++i) CHECK(r1[i] == pw(rwts[i]) * r0[i]);
  }
}
