#include "cm3/orbits.hpp"

#include <cmath>
#include <complex>

#include "cm3/relations.hpp"

namespace cm3 {

namespace {

using Mat2 = Eigen::Matrix<Complex, 2, 2>;

constexpr double kPostRel = 1e-6;       // verification band for postconditions
constexpr double kNoiseFloor = 1e-12;   // below this, relative to scale, a
                                        // value is indistinguishable from 0

const Complex kOmega = std::polar(1.0, 2.0 * M_PI / 3.0);

double cbrt6() { return std::cbrt(6.0); }

// Branch state: current tuple, accumulated word, case log.
struct Ctx {
  Tuple7<Complex> t;
  Complex v;
  TolerancePolicy tol;
  GroupWord<Complex> word;
  std::vector<std::string> branches;

  double scale() const { return std::max(1.0, tuple_scale(t)); }

  // Guarded zero test on a current coordinate (or a derived quantity with an
  // explicit term scale).
  bool zero(const Complex& x, double sc = -1.0) const {
    const double th = tol.threshold(sc < 0 ? scale() : std::max(1.0, sc));
    const double a = std::abs(x);
    if (a < th) return true;
    if (a > 10.0 * th) return false;
    throw AmbiguousError("tolerance guard band hit (|x| = " +
                         std::to_string(a) + ", threshold = " +
                         std::to_string(th) + ")");
  }
  bool nonzero(const Complex& x, double sc = -1.0) const {
    return !zero(x, sc);
  }
  bool all_zero() const {
    for (const Complex& x : t.to_array())
      if (!zero(x)) return false;
    return true;
  }

  void post_zero(const Complex& x, double opscale, const char* what) const {
    if (std::abs(x) > kPostRel * std::max(1.0, opscale))
      throw AmbiguousError(std::string("postcondition failed: ") + what);
  }

  void apply(const Move<Complex>& mv, const char* label) {
    t = act_tuple(mv, t, v);
    word.push_back(mv);
    branches.emplace_back(label);
  }
  void mark(const char* label) { branches.emplace_back(label); }
};

Move<Complex> theta_move(const Mat2& m, const TolerancePolicy& tol) {
  return Move<Complex>::theta(m, tol);
}

// SL2 matrix with unit-norm rows whose first row is along (p, q); rows of
// bounded norm keep the noise amplification of a kill step O(1).
Mat2 balanced_theta(const Complex& p, const Complex& q) {
  const double n = std::sqrt(std::norm(p) + std::norm(q));
  Mat2 m;
  m << p / n, q / n, -std::conj(q) / n, std::conj(p) / n;
  return m;
}

// Direction annihilating the quadratic part a3 x^2 + 2 a4 xy + a5 y^2.  The
// discriminant-zero stratum (where the whole special orbit lives) gets the
// rational double root, avoiding sqrt(0 + noise).
std::pair<Complex, Complex> null_direction(const Ctx& c) {
  const Complex a3 = c.t.a3, a4 = c.t.a4, a5 = c.t.a5;
  if (c.zero(a5)) return {Complex(0), Complex(1)};
  const Complex disc = a4 * a4 - a3 * a5;
  const double disc_scale = std::abs(a4) * std::abs(a4) +
                            std::abs(a3) * std::abs(a5);
  if (c.zero(disc, disc_scale)) return {a4, -a3};
  Complex s = std::sqrt(disc);
  if (std::abs(a4 + s) < std::abs(a4 - s)) s = -s;
  return {-a5, a4 + s};
}

// Kill a3 by a balanced theta; optionally demand a nonzero a7 on output,
// searching left unipotent shears (they keep the first row).
void theta_kill_a3(Ctx& c, const char* label, bool want_a7 = false) {
  auto [p, q] = null_direction(c);
  const Mat2 base = balanced_theta(p, q);
  static const double kShears[] = {0, 1, -1, 2, -2};
  const double sc_in = c.scale();
  for (double d : (want_a7 ? std::vector<double>(std::begin(kShears),
                                                 std::end(kShears))
                           : std::vector<double>{0})) {
    Mat2 m;
    m.row(0) = base.row(0);
    m.row(1) = d * base.row(0) + base.row(1);
    const Tuple7<Complex> cand = detail::theta_tuple(c.t, m);
    const double sc = std::max({1.0, sc_in, tuple_scale(cand)});
    if (std::abs(cand.a3) > kPostRel * sc) continue;
    if (want_a7 && std::abs(cand.a7) <= kPostRel * sc) continue;
    c.apply(theta_move(m, c.tol), label);
    return;
  }
  throw AmbiguousError(std::string(label) + ": no admissible theta");
}

void kill_a3(Ctx& c) {
  if (c.zero(c.t.a3)) {
    c.mark("a3.zero");
    return;
  }
  theta_kill_a3(c, "a3.kill");
}

// Balanced theta along (a7, -a6); the cubic part is a perfect cube on the
// variety once a3 = a4 = a5 = 0, so only the last coefficient survives.
double cube_collapse(Ctx& c, const char* label) {
  const Mat2 m = balanced_theta(c.t.a7, -c.t.a6);
  double sc = c.scale();
  c.apply(theta_move(m, c.tol), label);
  sc = std::max(sc, c.scale());
  c.post_zero(c.t.a6, sc, "cube collapsed (a6)");
  c.post_zero(c.t.a7, sc, "cube collapsed (a7)");
  c.post_zero(c.t.a8, sc, "cube collapsed (a8)");
  return sc;
}

void check_on_variety(const Ctx& c, const std::array<Complex, 5>& residuals,
                      const char* system) {
  const double s = c.scale();
  const double term_scale = std::max(1.0, s * s * s);
  for (const Complex& r : residuals)
    if (std::abs(r) > kPostRel * term_scale)
      throw DomainError(std::string("input does not satisfy the ") + system +
                        " relation system");
}

// ---------------------------------------------------------------- normalize

// Input: a3 ~ 0, a7 ~ 0.  Either finishes at the zero tuple or returns with
// a7 made nonzero (a3 kept zero).
bool make_a7_or_zero(Ctx& c) {
  const Complex v = c.v;
  if (c.nonzero(c.t.a8)) {
    c.mark("make-a7.a8");
    const double sc = c.scale();
    c.post_zero(c.t.a4, sc, "a4 on the a8-chain");
    c.post_zero(c.t.a6, sc, "a6 on the a8-chain");
    if (c.nonzero(c.t.a9))
      c.apply(Move<Complex>::psi_quad(-c.t.a9 / (c.t.a4 * c.t.a4 + v)),
              "make-a7.kill-a9");
    static const double kAlphas[] = {1, -1, 2, -2, 3, 0.5, -0.5, 5};
    bool spread = false;
    for (double a : kAlphas) {
      const Tuple7<Complex> cand =
          detail::phi_quad_tuple(c.t, v, Complex(a));
      const double s2 = std::max(1.0, tuple_scale(cand));
      if (std::abs(cand.a3) > kPostRel * s2 &&
          std::abs(cand.a8) > kPostRel * s2 &&
          std::abs(cand.a4) < kPostRel * s2 &&
          std::abs(cand.a7) < kPostRel * s2) {
        c.apply(Move<Complex>::phi_quad(Complex(a)), "make-a7.spread");
        spread = true;
        break;
      }
    }
    if (!spread) throw AmbiguousError("make-a7.a8: no usable quadratic move");
    theta_kill_a3(c, "make-a7.theta", /*want_a7=*/true);
    return false;
  }
  if (c.nonzero(c.t.a6)) {
    c.mark("make-a7.a6");
    double sc = c.scale();
    c.post_zero(c.t.a5, sc, "a5 when a6 is nonzero");
    if (c.nonzero(c.t.a4))
      c.apply(Move<Complex>::psi_quad(-c.t.a4 / c.t.a6), "make-a7.kill-a4");
    sc = std::max(sc, c.scale());
    c.post_zero(c.t.a3, sc, "pure-a6 form (a3)");
    c.post_zero(c.t.a4, sc, "pure-a6 form (a4)");
    c.post_zero(c.t.a9, sc, "pure-a6 form (a9)");
    c.apply(Move<Complex>::phi_quad(-c.t.a6 / v), "make-a7.kill-a6");
    for (const Complex& x : c.t.to_array())
      c.post_zero(x, sc, "zero tuple reached");
    return true;
  }
  // a6 ~ 0, a8 ~ 0: the relations force a4 into {0, +-3}
  c.mark("make-a7.cube-free");
  const Complex kappa = c.t.a4 * c.t.a4 + v;
  if (c.nonzero(c.t.a9))
    c.apply(Move<Complex>::psi_quad(-c.t.a9 / kappa), "make-a7.kill-a9");
  if (c.zero(c.t.a4)) {
    const double sc = c.scale();
    for (const Complex& x : c.t.to_array())
      c.post_zero(x, sc, "zero tuple (a4 = 0 case)");
    return true;
  }
  if (c.zero(c.t.a5)) {
    c.apply(Move<Complex>::phi_quad(Complex(1)), "make-a7.seed-a6");
    Mat2 m;
    m << Complex(1), Complex(0), Complex(1), Complex(1);
    c.apply(theta_move(m, c.tol), "make-a7.shear");
  } else {
    c.apply(Move<Complex>::psi_quad(Complex(1)), "make-a7.seed-a9");
    const Complex m11 = -c.t.a4 * c.t.a5 / Complex(18);
    Mat2 m;
    m << m11, Complex(1), m11 - Complex(1), Complex(1);
    c.apply(theta_move(m, c.tol), "make-a7.shear");
  }
  const double sc = c.scale();
  c.post_zero(c.t.a3, sc, "a3 after spread");
  if (std::abs(c.t.a7) <= kPostRel * sc)
    throw AmbiguousError("a7 still zero after spread");
  return false;
}

// a3 ~ 0 and a7 nonzero: flatten a4, a5, collapse the cube, kill the tail
// with the quadratic move (possible exactly because v != 0 here).
void finish_to_zero(Ctx& c) {
  double sc = c.scale();
  if (c.nonzero(c.t.a5))
    c.apply(Move<Complex>::psi_quad(-c.t.a5 / (Complex(2) * c.t.a7)),
            "finish.kill-a45");
  sc = std::max(sc, c.scale());
  c.post_zero(c.t.a4, sc, "a4 before collapse");
  c.post_zero(c.t.a5, sc, "a5 before collapse");
  sc = std::max(sc, cube_collapse(c, "finish.cube-collapse"));
  if (c.nonzero(c.t.a9))
    c.apply(Move<Complex>::psi_quad(-c.t.a9 / c.v), "finish.kill-a9");
  for (const Complex& x : c.t.to_array())
    c.post_zero(x, sc, "zero tuple reached");
}

}  // namespace

Tuple7<Complex> orbit_representative(OrbitLabel label) {
  Tuple7<Complex> t{};
  switch (label) {
    case OrbitLabel::Zero:
      break;
    case OrbitLabel::Special:
      t.a5 = cbrt6();
      t.a9 = 1.0;
      break;
    case OrbitLabel::Generic:
      t.a9 = 1.0;
      break;
  }
  return t;
}

NormalizationResult normalize_d3(const Tuple7<Complex>& t,
                                 const TolerancePolicy& tol) {
  Ctx c{t, Complex(-3.0), tol, {}, {}};
  check_on_variety(c, eval_id1z(c.t), "rank-one");
  if (c.all_zero()) {
    c.mark("input.zero");
  } else {
    kill_a3(c);
    if (!c.all_zero()) {
      bool done = false;
      if (c.zero(c.t.a7)) done = make_a7_or_zero(c);
      if (!done) finish_to_zero(c);
    }
  }
  NormalizationResult out;
  out.word = std::move(c.word);
  out.terminal = c.t;
  out.residual = tuple_scale(c.t);
  out.branches = std::move(c.branches);
  return out;
}

ClassificationResult classify_d30(const Tuple7<Complex>& t,
                                  const TolerancePolicy& tol) {
  Ctx c{t, Complex(0.0), tol, {}, {}};
  check_on_variety(c, eval_id2z(c.t), "commuting-variety");

  // One-directional crossguard for the special orbit: there the relations
  // force the quadratic discriminant a3 a5 - a4^2 to vanish identically.
  const Complex u_in = t.a3 * t.a5 - t.a4 * t.a4;
  const double u_scale =
      std::abs(t.a3) * std::abs(t.a5) + std::abs(t.a4) * std::abs(t.a4);

  const auto result = [&](OrbitLabel label) {
    if (label == OrbitLabel::Special &&
        std::abs(u_in) > kPostRel * std::max(1.0, u_scale))
      throw AmbiguousError(
          "special label inconsistent with nonvanishing quadratic "
          "discriminant");
    NormalizationResult norm;
    norm.word = std::move(c.word);
    norm.terminal = c.t;
    const auto rep = orbit_representative(label).to_array();
    const auto got = c.t.to_array();
    double res = 0.0;
    for (int i = 0; i < 7; ++i) res = std::max(res, std::abs(got[i] - rep[i]));
    norm.residual = res;
    norm.branches = std::move(c.branches);
    return ClassificationResult{label, std::move(norm)};
  };

  if (c.all_zero()) {
    c.mark("input.zero");
    return result(OrbitLabel::Zero);
  }
  kill_a3(c);
  if (c.all_zero()) {
    c.mark("exit.zero");
    return result(OrbitLabel::Zero);
  }

  if (c.zero(c.t.a7)) {
    double sc = c.scale();
    c.post_zero(c.t.a8, sc, "a8 forced by the relations");
    if (c.nonzero(c.t.a6)) {
      c.mark("spread.a6");
      c.post_zero(c.t.a5, sc, "a5 when a6 is nonzero");
      if (c.nonzero(c.t.a4))
        c.apply(Move<Complex>::psi_quad(-c.t.a4 / c.t.a6), "spread.kill-a4");
      sc = std::max(sc, c.scale());
      c.post_zero(c.t.a3, sc, "pure-a6 form (a3)");
      c.post_zero(c.t.a4, sc, "pure-a6 form (a4)");
      c.post_zero(c.t.a9, sc, "pure-a6 form (a9)");
      Mat2 m;
      m << Complex(1), Complex(-1), Complex(1), Complex(0);
      c.apply(theta_move(m, c.tol), "spread.shear");
    } else {
      c.post_zero(c.t.a4, sc, "a4 forced by the relations");
      const Complex a5 = c.t.a5, a9 = c.t.a9;
      const bool z5 = c.zero(a5), z9 = c.zero(a9);
      if (z5 && z9) {
        c.mark("exit.zero");
        return result(OrbitLabel::Zero);
      }
      Mat2 shear;
      shear << Complex(1), Complex(1), Complex(0), Complex(1);
      if (z5) {
        c.apply(theta_move(shear, c.tol), "spread.a9-only");
      } else if (z9) {
        c.apply(theta_move(shear, c.tol), "spread.a5-only");
        const Complex al = std::sqrt(Complex(-6) / c.t.a3);
        bool ok = false;
        for (const Complex& a : {al, -al}) {
          const Tuple7<Complex> cand = detail::phi_quad_tuple(c.t, c.v, a);
          const double s2 = std::max(1.0, tuple_scale(cand));
          if (std::abs(cand.a3) < kPostRel * s2 &&
              std::abs(cand.a7) > kPostRel * s2) {
            c.apply(Move<Complex>::phi_quad(a), "spread.sqrt");
            ok = true;
            break;
          }
        }
        if (!ok) throw AmbiguousError("spread.sqrt: no branch admissible");
      } else {
        const Complex delta = a5 * a5 * a5 - Complex(6) * a9 * a9;
        const double dscale = std::pow(std::abs(a5), 3) + 6 * std::norm(a9);
        if (c.zero(delta, dscale)) {
          const Complex zeta = std::pow(a9, 1.0 / 3.0);
          for (int j = 0; j < 3; ++j) {
            const Complex zj = zeta * (j == 0 ? Complex(1)
                                              : (j == 1 ? kOmega
                                                        : kOmega * kOmega));
            Mat2 m;
            m << zj, Complex(0), Complex(0), Complex(1) / zj;
            const Tuple7<Complex> cand = detail::theta_tuple(c.t, m);
            const double s2 = std::max({1.0, c.scale(), tuple_scale(cand)});
            if (std::abs(cand.a5 - cbrt6()) < kPostRel * s2 &&
                std::abs(cand.a9 - Complex(1)) < kPostRel * s2) {
              c.apply(theta_move(m, c.tol), "exit.special");
              return result(OrbitLabel::Special);
            }
          }
          throw AmbiguousError("special normalization found no cube root");
        }
        c.apply(theta_move(shear, c.tol), "spread.dense");
        static const double kAlphas[] = {1, -1, 2, -2, 3, 0.5, -0.5, 5};
        bool ok = false;
        for (double a : kAlphas) {
          Ctx save = c;
          c.apply(Move<Complex>::psi_quad(Complex(a)), "spread.chain-psi");
          try {
            theta_kill_a3(c, "spread.chain-kill", /*want_a7=*/true);
            ok = true;
            break;
          } catch (const AmbiguousError&) {
            c = std::move(save);
          }
        }
        if (!ok) throw AmbiguousError("spread.chain: no alpha admissible");
      }
    }
    const double s2 = c.scale();
    c.post_zero(c.t.a3, s2, "a3 after spread");
    if (std::abs(c.t.a7) <= kPostRel * s2)
      throw AmbiguousError("a7 still zero after spread");
  }

  // a3 ~ 0, a7 nonzero: every such point lands on the unit representative.
  double sc = c.scale();
  if (c.nonzero(c.t.a5))
    c.apply(Move<Complex>::psi_quad(-c.t.a5 / (Complex(2) * c.t.a7)),
            "finish.kill-a45");
  sc = std::max(sc, c.scale());
  c.post_zero(c.t.a4, sc, "a4 before collapse");
  c.post_zero(c.t.a5, sc, "a5 before collapse");
  sc = std::max(sc, cube_collapse(c, "finish.cube-collapse"));
  const Complex lead = c.t.a9;
  if (std::abs(lead) <= kNoiseFloor * sc)
    throw AmbiguousError("leading cubic coefficient at noise level");
  const Complex zeta = std::pow(lead, 1.0 / 3.0);
  Mat2 unit;
  unit << zeta, Complex(0), Complex(0), Complex(1) / zeta;
  c.apply(theta_move(unit, c.tol), "finish.unit-scale");
  const auto rep = orbit_representative(OrbitLabel::Generic).to_array();
  const auto got = c.t.to_array();
  for (int i = 0; i < 7; ++i)
    if (std::abs(got[i] - rep[i]) > kPostRel * std::max(1.0, sc))
      throw AmbiguousError("terminal not at the unit representative");
  return result(OrbitLabel::Generic);
}

}  // namespace cm3
