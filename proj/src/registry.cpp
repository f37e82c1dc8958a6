#include "cm3/registry.hpp"

#include <algorithm>
#include <chrono>

#include "cm3/cremona.hpp"
#include "cm3/json_io.hpp"
#include "cm3/relations.hpp"

namespace cm3 {

const char* to_string(WitnessFamily f) {
  switch (f) {
    case WitnessFamily::Generic: return "generic";
    case WitnessFamily::GenericTraceless: return "generic-traceless";
    case WitnessFamily::CM: return "cm";
    case WitnessFamily::Commuting: return "commuting";
    case WitnessFamily::Rank2: return "rank2";
  }
  return "?";
}

Witness make_witness(WitnessFamily family, int n, Rng& rng) {
  Witness w;
  w.family = family;
  w.n = n;
  switch (family) {
    case WitnessFamily::Generic: {
      auto [x, y] = random_pair(n, rng);
      w.x = std::move(x);
      w.y = std::move(y);
      break;
    }
    case WitnessFamily::GenericTraceless: {
      auto [x, y] = random_pair(n, rng);
      auto [a, b] = traceless_pair(x, y);
      w.x = std::move(a);
      w.y = std::move(b);
      break;
    }
    case WitnessFamily::CM: {
      w.quad = random_cm_point(n, rng);
      w.x = w.quad->x;
      w.y = w.quad->y;
      break;
    }
    case WitnessFamily::Commuting: {
      const auto fam = static_cast<CommutingFamily>(rng.uniform_int(0, 2));
      auto [x, y] = commuting_pair(fam, rng);
      w.x = std::move(x);
      w.y = std::move(y);
      break;
    }
    case WitnessFamily::Rank2: {
      auto [x, y] = rank_k_pair(2, rng);
      w.x = std::move(x);
      w.y = std::move(y);
      break;
    }
  }
  return w;
}

namespace {

using Residuals = std::vector<Rational>;
using Pair = std::pair<RationalMatrix, RationalMatrix>;

Rational tw(const char* word, const RationalMatrix& a,
            const RationalMatrix& b) {
  return trace_word(word_from_string(word), a, b);
}

RationalMatrix mat_pow(const RationalMatrix& m, int k) {
  RationalMatrix acc = identity_matrix<Rational>(m.rows());
  for (int i = 0; i < k; ++i) acc = RationalMatrix(acc * m);
  return acc;
}

void push_matrix(Residuals& out, const RationalMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
}

Rational half_n_n1(int n) {
  Rational r(static_cast<long>(n) * (n - 1), 2);
  r.canonicalize();
  return r;
}

Rational third_n_n1_n2(int n) {
  Rational r(static_cast<long>(n) * (n - 1) * (n - 2), 3);
  r.canonicalize();
  return r;
}

// Random exact SL2 matrix as a product of two unipotent shears.
Eigen::Matrix<Rational, 2, 2> random_sl2(Rng& rng) {
  const Rational b = rng.rational_frac(3, 2);
  const Rational c = rng.rational_frac(3, 2);
  Eigen::Matrix<Rational, 2, 2> m;
  m(0, 0) = Rational(1) + b * c;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = Rational(1);
  return m;
}

Residuals consistency(const Witness& w, Rng& rng,
                      typename Move<Rational>::Kind kind) {
  Move<Rational> mv;
  if (kind == Move<Rational>::Kind::Theta) {
    mv = Move<Rational>::theta(random_sl2(rng));
  } else {
    Rational alpha = rng.rational_frac(5, 3);
    if (alpha == 0) alpha = 1;
    mv = kind == Move<Rational>::Kind::Phi ? Move<Rational>::phi_quad(alpha)
                                           : Move<Rational>::psi_quad(alpha);
  }
  const auto res = consistency_residuals(mv, w.x, w.y);
  return Residuals(res.begin(), res.end());
}

std::vector<IdentityDef> build_registry() {
  using Kind = Move<Rational>::Kind;
  std::vector<IdentityDef> defs;
  auto add = [&](std::string id, std::string desc, WitnessFamily fam, int lo,
                 int hi,
                 std::function<Residuals(const Witness&, Rng&)> fn) {
    defs.push_back({std::move(id), std::move(desc), fam, lo, hi,
                    std::move(fn)});
  };

  // --- quadruple identities, general n
  add("eq2.2", "tr(A^k) = r A^k c for k = 1..6", WitnessFamily::CM, 2, 6,
      [](const Witness& w, Rng&) {
        auto [a, b] = traceless_pair(w.quad->x, w.quad->y);
        Residuals out;
        for (int k = 1; k <= 6; ++k) {
          const RationalMatrix p = mat_pow(a, k);
          out.push_back(p.trace() - (w.quad->r * p * w.quad->c)(0, 0));
        }
        return out;
      });
  add("eq2.3", "tr(B^k) = r B^k c for k = 1..6", WitnessFamily::CM, 2, 6,
      [](const Witness& w, Rng&) {
        auto [a, b] = traceless_pair(w.quad->x, w.quad->y);
        Residuals out;
        for (int k = 1; k <= 6; ++k) {
          const RationalMatrix p = mat_pow(b, k);
          out.push_back(p.trace() - (w.quad->r * p * w.quad->c)(0, 0));
        }
        return out;
      });
  add("eq2.4", "tr(ABAB) - tr(A^2B^2) = n(n-1)/2", WitnessFamily::CM, 2, 6,
      [](const Witness& w, Rng&) {
        auto [a, b] = traceless_pair(w.quad->x, w.quad->y);
        return Residuals{tw("ABAB", a, b) - tw("AABB", a, b) -
                         half_n_n1(w.n)};
      });
  add("eq2.5", "r AB c = tr(AB) + n(n-1)/2", WitnessFamily::CM, 2, 6,
      [](const Witness& w, Rng&) {
        auto [a, b] = traceless_pair(w.quad->x, w.quad->y);
        return Residuals{(w.quad->r * a * b * w.quad->c)(0, 0) -
                         tw("AB", a, b) - half_n_n1(w.n)};
      });
  add("eq2.6", "r BA c = tr(AB) - n(n-1)/2", WitnessFamily::CM, 2, 6,
      [](const Witness& w, Rng&) {
        auto [a, b] = traceless_pair(w.quad->x, w.quad->y);
        return Residuals{(w.quad->r * b * a * w.quad->c)(0, 0) -
                         tw("AB", a, b) + half_n_n1(w.n)};
      });
  add("eq2.7", "tr(A^3B^2) = tr(A^2BAB)", WitnessFamily::CM, 3, 3,
      [](const Witness& w, Rng&) {
        auto [a, b] = traceless_pair(w.quad->x, w.quad->y);
        return Residuals{tw("AAABB", a, b) - tw("AABAB", a, b)};
      });
  add("eq2.8", "tr(A^2BAB^2) = tr(A^2B^2AB) - n(n-1)(n-2)/3",
      WitnessFamily::CM, 3, 3, [](const Witness& w, Rng&) {
        auto [a, b] = traceless_pair(w.quad->x, w.quad->y);
        return Residuals{tw("AABABB", a, b) - tw("AABBAB", a, b) +
                         third_n_n1_n2(w.n)};
      });
  add("eq2.9", "tr((AB)^3) = tr(A^2B^2AB) + (n-1)tr(AB) - n(n-1)(n-2)/6",
      WitnessFamily::CM, 3, 3, [](const Witness& w, Rng&) {
        auto [a, b] = traceless_pair(w.quad->x, w.quad->y);
        return Residuals{tw("ABABAB", a, b) - tw("AABBAB", a, b) -
                         Rational(w.n - 1) * tw("AB", a, b) +
                         third_n_n1_n2(w.n) / 2};
      });
  add("eq2.10", "tr(A^3B^3) = tr(A^2B^2AB) - (n-2)tr(AB) - n(n-1)(n-2)/6",
      WitnessFamily::CM, 3, 3, [](const Witness& w, Rng&) {
        auto [a, b] = traceless_pair(w.quad->x, w.quad->y);
        return Residuals{tw("AAABBB", a, b) - tw("AABBAB", a, b) +
                         Rational(w.n - 2) * tw("AB", a, b) +
                         third_n_n1_n2(w.n) / 2};
      });
  add("eq2.11", "[A,B]^2 = I + (n-2) c r", WitnessFamily::CM, 2, 6,
      [](const Witness& w, Rng&) {
        auto [a, b] = traceless_pair(w.quad->x, w.quad->y);
        const RationalMatrix c = commutator(a, b);
        RationalMatrix resid = RationalMatrix(c * c) -
                               identity_matrix<Rational>(w.n) -
                               Rational(w.n - 2) * (w.quad->c * w.quad->r);
        Residuals out;
        push_matrix(out, resid);
        return out;
      });
  add("eq2.14", "M^3 = tr(M^2)/2 M + tr(M^3)/3 I for traceless M",
      WitnessFamily::GenericTraceless, 3, 3, [](const Witness& w, Rng&) {
        const RationalMatrix& m = w.x;
        RationalMatrix resid = mat_pow(m, 3) -
                               frac<Rational>(1, 2) * RationalMatrix(m * m).trace() * m -
                               frac<Rational>(1, 3) * mat_pow(m, 3).trace() *
                                   identity_matrix<Rational>(3);
        Residuals out;
        push_matrix(out, resid);
        return out;
      });

  // --- trace reductions for traceless pairs
  add("trace.a3b", "tr(A^3B) = a3 a4 / 2", WitnessFamily::GenericTraceless, 3,
      3, [](const Witness& w, Rng&) {
        const auto t = invariant_tuple(w.x, w.y);
        return Residuals{tw("AAAB", w.x, w.y) -
                         frac<Rational>(1, 2) * t.a[2] * t.a[3]};
      });
  add("trace.ab3", "tr(AB^3) = a5 a4 / 2", WitnessFamily::GenericTraceless, 3,
      3, [](const Witness& w, Rng&) {
        const auto t = invariant_tuple(w.x, w.y);
        return Residuals{tw("ABBB", w.x, w.y) -
                         frac<Rational>(1, 2) * t.a[4] * t.a[3]};
      });
  add("trace.a3b2", "tr(A^3B^2) = a3 a8 / 2 + a5 a6 / 3",
      WitnessFamily::GenericTraceless, 3, 3, [](const Witness& w, Rng&) {
        const auto t = invariant_tuple(w.x, w.y);
        return Residuals{tw("AAABB", w.x, w.y) -
                         frac<Rational>(1, 2) * t.a[2] * t.a[7] -
                         frac<Rational>(1, 3) * t.a[4] * t.a[5]};
      });
  add("trace.a2b3", "tr(A^2B^3) = a5 a7 / 2 + a3 a9 / 3",
      WitnessFamily::GenericTraceless, 3, 3, [](const Witness& w, Rng&) {
        const auto t = invariant_tuple(w.x, w.y);
        return Residuals{tw("AABBB", w.x, w.y) -
                         frac<Rational>(1, 2) * t.a[4] * t.a[6] -
                         frac<Rational>(1, 3) * t.a[2] * t.a[8]};
      });
  add("trace.a3b3", "tr(A^3B^3) = a3 a4 a5 / 4 + a6 a9 / 3",
      WitnessFamily::GenericTraceless, 3, 3, [](const Witness& w, Rng&) {
        const auto t = invariant_tuple(w.x, w.y);
        return Residuals{tw("AAABBB", w.x, w.y) -
                         frac<Rational>(1, 4) * t.a[2] * t.a[3] * t.a[4] -
                         frac<Rational>(1, 3) * t.a[5] * t.a[8]};
      });
  add("trace.a2b2.cm", "tr(A^2B^2) = a3 a5 / 6 + a4^2 / 3 - 1 on the rank-one stratum",
      WitnessFamily::CM, 3, 3, [](const Witness& w, Rng&) {
        auto [a, b] = traceless_pair(w.quad->x, w.quad->y);
        const auto t = invariant_tuple(a, b);
        return Residuals{tw("AABB", a, b) -
                         frac<Rational>(1, 6) * t.a[2] * t.a[4] -
                         frac<Rational>(1, 3) * t.a[3] * t.a[3] + 1};
      });
  add("trace.a4b2.cm",
      "tr(A^4B^2) = a3^2 a5 / 12 + a3 a4^2 / 6 - a3 / 2 + a6 a8 / 3 on the rank-one stratum",
      WitnessFamily::CM, 3, 3, [](const Witness& w, Rng&) {
        auto [a, b] = traceless_pair(w.quad->x, w.quad->y);
        const auto t = invariant_tuple(a, b);
        return Residuals{tw("AAAABB", a, b) -
                         frac<Rational>(1, 12) * t.a[2] * t.a[2] * t.a[4] -
                         frac<Rational>(1, 6) * t.a[2] * t.a[3] * t.a[3] +
                         frac<Rational>(1, 2) * t.a[2] -
                         frac<Rational>(1, 3) * t.a[5] * t.a[7]};
      });
  add("eq3.1", "tr(A^4B^2) = tr(A^3BAB) - 3/2 tr(A^2)", WitnessFamily::CM, 3,
      3, [](const Witness& w, Rng&) {
        auto [a, b] = traceless_pair(w.quad->x, w.quad->y);
        return Residuals{tw("AAAABB", a, b) - tw("AAABAB", a, b) +
                         frac<Rational>(3, 2) * tw("AA", a, b)};
      });
  add("eq3.2", "tr(A^3BAB) = tr((A^2B)^2) + 1/2 tr(A^2)", WitnessFamily::CM,
      3, 3, [](const Witness& w, Rng&) {
        auto [a, b] = traceless_pair(w.quad->x, w.quad->y);
        return Residuals{tw("AAABAB", a, b) - tw("AABAAB", a, b) -
                         frac<Rational>(1, 2) * tw("AA", a, b)};
      });

  // --- relation systems on their strata
  add("id1z.cm", "the five rank-one relations vanish on sampled quadruples",
      WitnessFamily::CM, 3, 3, [](const Witness& w, Rng&) {
        const auto t = invariant_tuple(w.quad->x, w.quad->y);
        const auto r = eval_id1z(t.seven());
        return Residuals(r.begin(), r.end());
      });
  add("vw.cm", "v = -3 and w = 2 on the rank-one stratum", WitnessFamily::CM,
      3, 3, [](const Witness& w, Rng&) {
        const auto t = invariant_tuple(w.quad->x, w.quad->y);
        return Residuals{t.v + 3, t.w - 2};
      });
  add("rank1.cm", "rank([X,Y] + I) = 1 for sampled quadruples",
      WitnessFamily::CM, 2, 6, [](const Witness& w, Rng&) {
        const RationalMatrix m = commutator(w.quad->x, w.quad->y) +
                                 identity_matrix<Rational>(w.n);
        return Residuals{Rational(rank(m) - 1)};
      });
  add("id2z.comm", "the homogeneous relations vanish on commuting pairs",
      WitnessFamily::Commuting, 3, 3, [](const Witness& w, Rng&) {
        const auto t = invariant_tuple(w.x, w.y);
        const auto r = eval_id2z(t.seven());
        Residuals out(r.begin(), r.end());
        out.push_back(t.v);
        out.push_back(t.w);
        return out;
      });
  add("cprime.rank2", "1 + v + w = 0 on constructed rank-two pairs",
      WitnessFamily::Rank2, 3, 3, [](const Witness& w, Rng&) {
        const auto c = check_cprime_criterion(w.x, w.y);
        return Residuals{c.residual, Rational(c.rank_is_2 ? 0 : 1)};
      });
  add("r.match",
      "the determinant-combination polynomials reproduce both relation "
      "systems at v = -3 and v = 0",
      WitnessFamily::Generic, 3, 3, [](const Witness& w, Rng&) {
        const auto t = invariant_tuple(w.x, w.y).seven();
        const auto rm3 = eval_r(t, Rational(-3));
        const auto r0 = eval_r(t, Rational(0));
        const auto i1 = eval_id1z(t);
        const auto i2 = eval_id2z(t);
        Residuals out;
        for (int i = 0; i < 5; ++i) out.push_back(rm3[i] - i1[i]);
        for (int i = 0; i < 5; ++i) out.push_back(r0[i] - i2[i]);
        return out;
      });
  add("rel.equiv",
      "the two forms of the defining relation agree and vanish on random "
      "pairs",
      WitnessFamily::Generic, 3, 3, [](const Witness& w, Rng&) {
        const auto t = invariant_tuple(w.x, w.y);
        const Rational oldr = eval_old_relation(t.seven(), t.v, t.w);
        const Rational newr = eval_new_relation(t.seven(), t.v, t.w);
        return Residuals{oldr - newr, newr};
      });
  add("vw.def",
      "commutator forms of v and w match their trace-monomial definitions",
      WitnessFamily::Generic, 3, 3, [](const Witness& w, Rng&) {
        const auto t = invariant_tuple(w.x, w.y);
        auto [a, b] = traceless_pair(w.x, w.y);
        const auto aux = aux_traces(a, b);
        return Residuals{t.v - (aux.a2b2 - aux.abab),
                         t.w - (aux.a2b2ab - aux.a2bab2)};
      });
  add("det.trace", "det M = tr^3 M / 6 - tr(M^2) tr M / 2 + tr(M^3) / 3",
      WitnessFamily::Generic, 3, 3, [](const Witness& w, Rng&) {
        const RationalMatrix& m = w.x;
        const Rational t1 = m.trace();
        const Rational t2 = RationalMatrix(m * m).trace();
        const Rational t3 = mat_pow(m, 3).trace();
        return Residuals{det(m) - t1 * t1 * t1 / 6 + t2 * t1 / 2 - t3 / 3};
      });
  add("scaling.weights",
      "tuple, (v, w) and the r-polynomials scale with the stated weights "
      "under (X, Y) -> (aX, Y)",
      WitnessFamily::Generic, 3, 3, [](const Witness& w, Rng& rng) {
        Rational al = rng.rational_frac(6, 3);
        if (al == 0) al = Rational(2);
        const auto t0 = invariant_tuple(w.x, w.y);
        const auto t1 = invariant_tuple(RationalMatrix(al * w.x), w.y);
        const int wts[9] = {1, 0, 2, 1, 0, 3, 2, 1, 0};
        auto power = [&](int e) {
          Rational p(1);
          for (int i = 0; i < e; ++i) p *= al;
          return p;
        };
        Residuals out;
        for (int i = 0; i < 9; ++i)
          out.push_back(t1.a[i] - power(wts[i]) * t0.a[i]);
        out.push_back(t1.v - power(2) * t0.v);
        out.push_back(t1.w - power(3) * t0.w);
        const auto r0 = eval_r(t0.seven(), t0.v);
        const auto r1 = eval_r(t1.seven(), t1.v);
        const int rwts[5] = {2, 3, 4, 3, 2};
        for (int i = 0; i < 5; ++i)
          out.push_back(r1[i] - power(rwts[i]) * r0[i]);
        return out;
      });

  // --- agreement of the two action levels
  const struct {
    const char* id;
    WitnessFamily fam;
    Move<Rational>::Kind kind;
    const char* desc;
  } acts[] = {
      {"act.theta.cm", WitnessFamily::CM, Kind::Theta,
       "theta: tuple action matches the matrix action on rank-one witnesses"},
      {"act.phi2.cm", WitnessFamily::CM, Kind::Phi,
       "quadratic phi: tuple action matches the matrix action on rank-one "
       "witnesses"},
      {"act.psi2.cm", WitnessFamily::CM, Kind::Psi,
       "quadratic psi: tuple action matches the matrix action on rank-one "
       "witnesses"},
      {"act.theta.comm", WitnessFamily::Commuting, Kind::Theta,
       "theta: tuple action matches the matrix action on commuting pairs"},
      {"act.phi2.comm", WitnessFamily::Commuting, Kind::Phi,
       "quadratic phi: tuple action matches the matrix action on commuting "
       "pairs"},
      {"act.psi2.comm", WitnessFamily::Commuting, Kind::Psi,
       "quadratic psi: tuple action matches the matrix action on commuting "
       "pairs"},
  };
  for (const auto& a : acts) {
    const auto kind = a.kind;
    add(a.id, a.desc, a.fam, 3, 3,
        [kind](const Witness& w, Rng& rng) {
          return consistency(w, rng, kind);
        });
  }

  return defs;
}

}  // namespace

const std::vector<IdentityDef>& identity_registry() {
  static const std::vector<IdentityDef> defs = build_registry();
  return defs;
}

std::vector<std::string> registry_ids() {
  std::vector<std::string> out;
  for (const auto& d : identity_registry()) out.push_back(d.id);
  return out;
}

const IdentityDef& find_identity(const std::string& id) {
  for (const auto& d : identity_registry())
    if (d.id == id) return d;
  throw UnknownIdentityError("unknown identity id: " + id);
}

std::vector<IdentityReport> run_identity_suite(
    const std::vector<std::string>& ids, int trials, std::uint64_t seed) {
  std::vector<const IdentityDef*> defs;
  for (const auto& id : ids) defs.push_back(&find_identity(id));
  std::sort(defs.begin(), defs.end(),
            [](const IdentityDef* a, const IdentityDef* b) {
              return a->id < b->id;
            });
  defs.erase(std::unique(defs.begin(), defs.end(),
                         [](const IdentityDef* a, const IdentityDef* b) {
                           return a->id == b->id;
                         }),
             defs.end());

  std::vector<IdentityReport> reports;
  for (const IdentityDef* def : defs) {
    IdentityReport rep;
    rep.id = def->id;
    rep.trials = trials;
    const auto start = std::chrono::steady_clock::now();
    for (int trial = 0; trial < trials; ++trial) {
      Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(trial));
      const int span = def->n_max - def->n_min + 1;
      const int n = def->n_min + trial % span;
      const Witness w = make_witness(def->family, n, rng);
      const Residuals res = def->residuals(w, rng);
      bool ok = true;
      for (const Rational& r : res) ok = ok && r == 0;
      if (!ok) {
        ++rep.failures;
        if (rep.first_failure.empty()) {
          Json fail{{"trial", trial},
                    {"n", w.n},
                    {"family", to_string(w.family)},
                    {"X", matrix_to_json(w.x)},
                    {"Y", matrix_to_json(w.y)}};
          if (w.quad) fail["quadruple"] = quadruple_to_json(*w.quad);
          Json rj = Json::array();
          for (const Rational& r : res) rj.push_back(scalar_to_json(r));
          fail["residuals"] = rj;
          rep.first_failure = fail.dump();
        }
      }
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace cm3
