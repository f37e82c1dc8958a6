// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Every tolerance and count is pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cm3/orbits.hpp"
#include "cm3/registry.hpp"
#include "cm3/relations.hpp"

using namespace cm3;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("%s  criterion %2d  %s\n", ok ? "PASS" : "FAIL", criterion,
              what.c_str());
  if (!ok) ++g_failures;
}

bool suite_clean(const std::vector<std::string>& ids, int trials,
                 std::uint64_t seed) {
  for (const auto& r : run_identity_suite(ids, trials, seed))
    if (r.failures != 0) return false;
  return true;
}

Tuple7<Complex> to_complex(const Tuple7<Rational>& t) {
  std::array<Complex, 7> a;
  const auto r = t.to_array();
  for (int i = 0; i < 7; ++i) a[i] = Complex(r[i].get_d(), 0.0);
  return Tuple7<Complex>::from_array(a);
}

double replay_error(const Tuple7<Complex>& input, const Complex& v,
                    const NormalizationResult& r) {
  const Tuple7<Complex> replayed = act_tuple(r.word, input, v);
  const auto a = replayed.to_array(), b = r.terminal.to_array();
  double e = 0.0;
  for (int i = 0; i < 7; ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

GroupWord<Complex> random_word(Rng& rng, int len) {
  GroupWord<Complex> w;
  static const double params[] = {1, -1, 2, -2, 0.5, -0.5};
  for (int i = 0; i < len; ++i) {
    switch (rng.uniform_int(0, 3)) {
      case 0:
        w.push_back(
            Move<Complex>::phi_quad(Complex(params[rng.uniform_int(0, 5)])));
        break;
      case 1:
        w.push_back(
            Move<Complex>::psi_quad(Complex(params[rng.uniform_int(0, 5)])));
        break;
      default: {
        Eigen::Matrix<Complex, 2, 2> m;
        const double b = static_cast<double>(rng.uniform_int(-2, 2));
        const double c = static_cast<double>(rng.uniform_int(-2, 2));
        m << Complex(1.0 + b * c), Complex(b), Complex(c), Complex(1.0);
        w.push_back(Move<Complex>::theta(m));
      }
    }
  }
  return w;
}

// 1. The two defining-relation forms agree exactly and vanish on 1000 random
//    integer pairs, single-threaded, within 60 s.
void criterion1() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  Rng base(20260101);
  for (int t = 0; t < 1000 && ok; ++t) {
    Rng rng = Rng::for_trial(20260101, static_cast<std::uint64_t>(t));
    auto [x, y] = random_pair(3, rng);
    const auto iv = invariant_tuple(x, y);
    const Rational oldr = eval_old_relation(iv.seven(), iv.v, iv.w);
    const Rational newr = eval_new_relation(iv.seven(), iv.v, iv.w);
    ok = oldr == newr && newr == 0;
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  report(1, ok && secs < 60.0,
         "defining-relation equivalence on 1000 exact pairs (" +
             std::to_string(secs) + " s)");
}

// 2. 200 rank-one witnesses (n = 3): five relations vanish, v = -3, w = 2,
//    rank([X,Y] + I) = 1, all exactly.
void criterion2() {
  bool ok = true;
  for (int t = 0; t < 200 && ok; ++t) {
    Rng rng = Rng::for_trial(2, static_cast<std::uint64_t>(t));
    const CMQuadruple q = random_cm_point(3, rng);
    const auto iv = invariant_tuple(q.x, q.y);
    for (const Rational& r : eval_id1z(iv.seven())) ok = ok && r == 0;
    ok = ok && iv.v == -3 && iv.w == 2;
    ok = ok && rank(RationalMatrix(commutator(q.x, q.y) +
                                   identity_matrix<Rational>(3))) == 1;
  }
  report(2, ok, "rank-one relation system, v = -3, w = 2, rank 1 (200 witnesses)");
}

// 3. Vector-identity family for n in {2..6} (50 witnesses each) and the
//    n = 3 quartet with its dimension-dependent constants.
void criterion3() {
  const bool general = suite_clean({"eq2.2", "eq2.3", "eq2.4", "eq2.5", "eq2.6"},
                                   250, 3);  // n cycles 2..6: 50 apiece
  const bool quartet =
      suite_clean({"eq2.7", "eq2.8", "eq2.9", "eq2.10"}, 200, 3);
  report(3, general && quartet,
         "quadruple identities for n = 2..6 plus the n = 3 quartet");
}

// 4. Five unconditional trace reductions on 500 generic traceless pairs; the
//    two stratum-conditional ones on 200 rank-one witnesses.
void criterion4() {
  const bool unconditional = suite_clean(
      {"trace.a3b", "trace.ab3", "trace.a3b2", "trace.a2b3", "trace.a3b3"},
      500, 4);
  const bool conditional =
      suite_clean({"trace.a2b2.cm", "trace.a4b2.cm"}, 200, 4);
  report(4, unconditional && conditional,
         "trace reductions: 5 unconditional (500 pairs), 2 conditional (200)");
}

// 5. The two sixth-degree identities on 200 rank-one witnesses.
void criterion5() {
  report(5, suite_clean({"eq3.1", "eq3.2"}, 200, 5),
         "sixth-degree trace identities on 200 rank-one witnesses");
}

// 6. Homogeneous system on 200 commuting pairs across all three families.
void criterion6() {
  bool ok = true;
  int per_family[3] = {0, 0, 0};
  for (int t = 0; t < 200 && ok; ++t) {
    Rng rng = Rng::for_trial(6, static_cast<std::uint64_t>(t));
    const auto fam = static_cast<CommutingFamily>(t % 3);
    ++per_family[t % 3];
    auto [x, y] = commuting_pair(fam, rng);
    const auto iv = invariant_tuple(x, y);
    for (const Rational& r : eval_id2z(iv.seven())) ok = ok && r == 0;
  }
  ok = ok && per_family[0] > 0 && per_family[1] > 0 && per_family[2] > 0;
  report(6, ok, "homogeneous relation system on 200 commuting pairs");
}

// 7. 100 constructed rank-two pairs satisfy 1 + v + w = 0 exactly.
void criterion7() {
  bool ok = true;
  for (int t = 0; t < 100 && ok; ++t) {
    Rng rng = Rng::for_trial(7, static_cast<std::uint64_t>(t));
    auto [x, y] = rank_k_pair(2, rng);
    const auto c = check_cprime_criterion(x, y);
    ok = c.rank_is_2 && c.residual == 0;
  }
  report(7, ok, "rank-two criterion 1 + v + w = 0 on 100 constructed pairs");
}

// 8. Tuple-level and matrix-level actions agree exactly: 200 combinations per
//    stratum for each of theta, quadratic phi, quadratic psi.
void criterion8() {
  const bool ok = suite_clean({"act.theta.cm", "act.phi2.cm", "act.psi2.cm",
                               "act.theta.comm", "act.phi2.comm",
                               "act.psi2.comm"},
                              200, 8);
  report(8, ok, "action consistency, 200 (witness, move) draws per id");
}

// 9. 200 rank-one tuples normalize to zero: residual < 1e-6, word length
//    <= 16, replay soundness on every output.
void criterion9() {
  bool ok = true;
  for (int t = 0; t < 200 && ok; ++t) {
    Rng rng = Rng::for_trial(9, static_cast<std::uint64_t>(t));
    const CMQuadruple q = random_cm_point(3, rng);
    const Tuple7<Complex> in = to_complex(invariant_tuple(q.x, q.y).seven());
    try {
      const NormalizationResult r = normalize_d3(in);
      const double tol10 = 10.0 * TolerancePolicy{}.threshold(tuple_scale(in));
      ok = r.residual < 1e-6 &&
           static_cast<int>(r.word.size()) <= kNormalizeWordLimit &&
           replay_error(in, Complex(-3.0), r) < std::max(tol10, 1e-9);
    } catch (const Error&) {
      ok = false;
    }
  }
  report(9, ok, "normalization of 200 rank-one tuples (residual < 1e-6)");
}

// 10. The three representatives classify to themselves; 100 admissible-word
//     perturbations each keep their label; commuting-pair tuples from all
//     three families classify without refusals.
void criterion10() {
  bool ok = true;
  try {
    for (const auto label :
         {OrbitLabel::Zero, OrbitLabel::Special, OrbitLabel::Generic}) {
      const auto rep = orbit_representative(label);
      ok = ok && classify_d30(rep).label == label;
      Rng rng(static_cast<std::uint64_t>(label) + 10);
      int done = 0;
      while (done < 100 && ok) {
        const auto w =
            random_word(rng, 1 + static_cast<int>(rng.uniform_int(0, 3)));
        const Tuple7<Complex> moved = act_tuple(w, rep, Complex(0.0));
        if (tuple_scale(moved) > 1e5) continue;
        ++done;
        const auto got = classify_d30(moved);
        ok = got.label == label &&
             static_cast<int>(got.norm.word.size()) <= kClassifyWordLimit;
      }
    }
    for (int t = 0; t < 90 && ok; ++t) {
      Rng rng = Rng::for_trial(10, static_cast<std::uint64_t>(t));
      auto [x, y] = commuting_pair(static_cast<CommutingFamily>(t % 3), rng);
      const auto in = to_complex(invariant_tuple(x, y).seven());
      const auto got = classify_d30(in);  // any refusal throws
      ok = static_cast<int>(got.norm.word.size()) <= kClassifyWordLimit;
    }
  } catch (const Error&) {
    ok = false;
  }
  report(10, ok,
         "orbit classification: representatives, 100 perturbations each, "
         "commuting tuples");
}

// 11. Scaling weights for the tuple, (v, w) and the r-polynomials, exactly,
//     on 100 random pairs with random rational scalars.
void criterion11() {
  report(11, suite_clean({"scaling.weights"}, 100, 11),
         "scaling equivariance on 100 random pairs");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
