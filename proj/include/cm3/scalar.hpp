#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include <Eigen/Core>

namespace cm3 {

// Exact scalars for identity verification, complex doubles for the orbit
// algorithms (which need square and cube roots).
using Rational = mpq_class;
using Complex = std::complex<double>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ConstructionError : Error {
  using Error::Error;
};
// Raised when a tolerance decision lands inside the guard band or a branch
// postcondition cannot be met; a refusal, never a silently wrong answer.
struct AmbiguousError : Error {
  using Error::Error;
};
struct UnknownIdentityError : Error {
  using Error::Error;
};
struct UnsupportedMoveError : Error {
  using Error::Error;
};

// Zero tests on complex data go through this policy; exact rationals ignore
// it entirely.
struct TolerancePolicy {
  double abs_eps = 1e-9;
  double rel_eps = 1e-9;

  double threshold(double scale) const {
    return abs_eps + rel_eps * std::max(1.0, std::abs(scale));
  }
  bool is_zero(const Complex& z, double scale = 1.0) const {
    return std::abs(z) <= threshold(scale);
  }
};

// "p/q" or plain integer string, canonicalized (lowest terms, positive
// denominator).
inline Rational parse_rational(const std::string& text) {
  mpq_class q;
  try {
    q = mpq_class(text);
  } catch (const std::invalid_argument&) {
    throw ParseError("invalid rational literal: '" + text + "'");
  }
  if (q.get_den() == 0) throw ParseError("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) {
  return q.get_str();
}

// Small exact fraction constant usable in both scalar domains.
template <class S>
S frac(long num, long den) {
  return S(num) / S(den);
}
template <>
inline Rational frac<Rational>(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}
template <>
inline Complex frac<Complex>(long num, long den) {
  return Complex(static_cast<double>(num) / static_cast<double>(den), 0.0);
}

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, const TolerancePolicy& = {},
                      double = 1.0) {
    return x == 0;
  }
  static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static bool is_zero(const Complex& x, const TolerancePolicy& tol = {},
                      double scale = 1.0) {
    return tol.is_zero(x, scale);
  }
  static double magnitude(const Complex& x) { return std::abs(x); }
};

}  // namespace cm3

namespace Eigen {

// Adaptation of GMP rationals as an Eigen scalar (the standard custom-scalar
// NumTraits pattern).
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen
