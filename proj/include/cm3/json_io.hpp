#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "cm3/cremona.hpp"
#include "cm3/invariants.hpp"
#include "cm3/matrix.hpp"
#include "cm3/orbits.hpp"
#include "cm3/sampler.hpp"

namespace cm3 {

using Json = nlohmann::ordered_json;

// Scalar encodings: rationals as "p/q" (or "p") strings, complex numbers as
// [re, im] pairs.
Json scalar_to_json(const Rational& x);
Json scalar_to_json(const Complex& x);
Rational rational_from_json(const Json& j);
Complex complex_from_json(const Json& j);

// Matrix: {"domain": "rational"|"complex", "n": 3, "entries": [[...]]}
Json matrix_to_json(const RationalMatrix& m);
Json matrix_to_json(const ComplexMatrix& m);

using MatrixVariant = std::variant<RationalMatrix, ComplexMatrix>;
MatrixVariant matrix_from_json(const Json& j);

// Pair container {"X": ..., "Y": ...} with matching domains.
struct PairVariant {
  MatrixVariant x, y;
};
PairVariant pair_from_json(const Json& j);

// Invariant tuple: {"a": [a1..a9], "v": ..., "w": ...}
template <class S>
Json invariant_tuple_to_json(const InvariantTuple<S>& t) {
  Json a = Json::array();
  for (const S& x : t.a) a.push_back(scalar_to_json(x));
  return Json{{"a", a}, {"v", scalar_to_json(t.v)}, {"w", scalar_to_json(t.w)}};
}

// Seven-tuple files: {"a": [a3..a9] or [a1..a9], "v": ...?, "w": ...?}
struct TupleInput {
  Tuple7<Complex> seven;
  bool has_v = false, has_w = false;
  Complex v{}, w{};
  bool was_rational = false;
  Tuple7<Rational> seven_rational;
  Rational v_rational{}, w_rational{};
};
TupleInput tuple_from_json(const Json& j);

// Group word: [{"phi": [c0, c1, ...]}, {"psi": [...]},
//              {"theta": [[a, b], [c, d]]}]
Json word_to_json(const GroupWord<Rational>& w);
Json word_to_json(const GroupWord<Complex>& w);

using WordVariant = std::variant<GroupWord<Rational>, GroupWord<Complex>>;
WordVariant word_from_json(const Json& j, const TolerancePolicy& tol = {});

GroupWord<Complex> word_to_complex(const GroupWord<Rational>& w,
                                   const TolerancePolicy& tol = {});

Json quadruple_to_json(const CMQuadruple& q);

Json normalization_to_json(const NormalizationResult& r);

template <class S>
Json tuple7_to_json(const Tuple7<S>& t) {
  Json a = Json::array();
  for (const S& x : t.to_array()) a.push_back(scalar_to_json(x));
  return a;
}

Json read_json_file(const std::string& path);

}  // namespace cm3
