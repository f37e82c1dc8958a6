#include "cm3/json_io.hpp"

#include <fstream>
#include <iostream>

namespace cm3 {

Json scalar_to_json(const Rational& x) {
  return Json(to_string(x));
}

Json scalar_to_json(const Complex& x) {
  return Json::array({x.real(), x.imag()});
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("rational scalar must be a \"p/q\" string or an integer");
}

Complex complex_from_json(const Json& j) {
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  throw ParseError("complex scalar must be [re, im] or a number");
}

namespace {

template <class S, class Reader>
DenseMatrix<S> entries_from_json(const Json& j, Reader read) {
  if (!j.contains("entries") || !j["entries"].is_array())
    throw ParseError("matrix: missing \"entries\" array");
  const auto& rows = j["entries"];
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) throw ParseError("matrix: empty \"entries\"");
  DenseMatrix<S> m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!rows[i].is_array() ||
        static_cast<Eigen::Index>(rows[i].size()) != n)
      throw ParseError("matrix: entries must form a square array");
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = read(rows[i][k]);
  }
  if (j.contains("n") && j["n"].get<Eigen::Index>() != n)
    throw ParseError("matrix: \"n\" disagrees with entry count");
  return m;
}

template <class S>
Json matrix_json_impl(const DenseMatrix<S>& m, const char* domain) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      row.push_back(scalar_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return Json{{"domain", domain}, {"n", m.rows()}, {"entries", rows}};
}

}  // namespace

Json matrix_to_json(const RationalMatrix& m) {
  return matrix_json_impl(m, "rational");
}

Json matrix_to_json(const ComplexMatrix& m) {
  return matrix_json_impl(m, "complex");
}

MatrixVariant matrix_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("matrix: expected an object");
  const std::string domain = j.value("domain", "rational");
  if (domain == "rational")
    return entries_from_json<Rational>(j, rational_from_json);
  if (domain == "complex")
    return entries_from_json<Complex>(j, complex_from_json);
  throw ParseError("matrix: unknown domain \"" + domain + "\"");
}

PairVariant pair_from_json(const Json& j) {
  if (!j.contains("X") || !j.contains("Y"))
    throw ParseError("pair: need \"X\" and \"Y\" matrices");
  PairVariant p{matrix_from_json(j["X"]), matrix_from_json(j["Y"])};
  if (p.x.index() != p.y.index())
    throw DomainError("pair: X and Y must share one scalar domain");
  const Eigen::Index nx = std::visit([](const auto& m) { return m.rows(); }, p.x);
  const Eigen::Index ny = std::visit([](const auto& m) { return m.rows(); }, p.y);
  if (nx != ny) throw DimensionError("pair: X and Y must have equal dimension");
  return p;
}

TupleInput tuple_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("a") || !j["a"].is_array())
    throw ParseError("tuple: expected {\"a\": [...]} object");
  const auto& a = j["a"];
  if (a.size() != 7 && a.size() != 9)
    throw ParseError("tuple: \"a\" must list 7 (a3..a9) or 9 (a1..a9) values");
  const std::size_t off = a.size() == 9 ? 2 : 0;

  TupleInput out;
  out.was_rational = true;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i].is_string() || a[i].is_number_integer()))
      out.was_rational = false;
  if (j.contains("v") && !(j["v"].is_string() || j["v"].is_number_integer()))
    out.was_rational = false;
  if (j.contains("w") && !(j["w"].is_string() || j["w"].is_number_integer()))
    out.was_rational = false;

  std::array<Complex, 7> vals;
  std::array<Rational, 7> rvals;
  for (int i = 0; i < 7; ++i) {
    const Json& src = a[off + i];
    if (out.was_rational) {
      rvals[i] = rational_from_json(src);
      vals[i] = Complex(rvals[i].get_d(), 0.0);
    } else {
      vals[i] = complex_from_json(src);
    }
  }
  out.seven = Tuple7<Complex>::from_array(vals);
  if (out.was_rational) out.seven_rational = Tuple7<Rational>::from_array(rvals);
  if (j.contains("v")) {
    out.has_v = true;
    if (out.was_rational) {
      out.v_rational = rational_from_json(j["v"]);
      out.v = Complex(out.v_rational.get_d(), 0.0);
    } else {
      out.v = complex_from_json(j["v"]);
    }
  }
  if (j.contains("w")) {
    out.has_w = true;
    if (out.was_rational) {
      out.w_rational = rational_from_json(j["w"]);
      out.w = Complex(out.w_rational.get_d(), 0.0);
    } else {
      out.w = complex_from_json(j["w"]);
    }
  }
  return out;
}

namespace {

template <class S>
Json word_json_impl(const GroupWord<S>& w) {
  Json out = Json::array();
  for (const auto& mv : w) {
    using Kind = typename Move<S>::Kind;
    if (mv.kind == Kind::Theta) {
      out.push_back(Json{{"theta",
                          Json::array({Json::array({scalar_to_json(mv.m(0, 0)),
                                                    scalar_to_json(mv.m(0, 1))}),
                                       Json::array({scalar_to_json(mv.m(1, 0)),
                                                    scalar_to_json(mv.m(1, 1))})})}});
    } else {
      Json coeffs = Json::array();
      for (const S& c : mv.coeffs) coeffs.push_back(scalar_to_json(c));
      out.push_back(Json{{mv.kind == Kind::Phi ? "phi" : "psi", coeffs}});
    }
  }
  return out;
}

template <class S, class Reader>
GroupWord<S> word_from_json_impl(const Json& j, Reader read,
                                 const TolerancePolicy& tol) {
  GroupWord<S> w;
  for (const auto& item : j) {
    if (!item.is_object() || item.size() != 1)
      throw ParseError("word: each move is a one-key object");
    if (item.contains("theta")) {
      const auto& rows = item["theta"];
      if (!rows.is_array() || rows.size() != 2 || rows[0].size() != 2 ||
          rows[1].size() != 2)
        throw ParseError("word: theta needs a 2x2 matrix");
      Eigen::Matrix<S, 2, 2> m;
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) m(i, k) = read(rows[i][k]);
      w.push_back(Move<S>::theta(m, tol));
    } else if (item.contains("phi") || item.contains("psi")) {
      const bool is_phi = item.contains("phi");
      const auto& arr = item[is_phi ? "phi" : "psi"];
      if (!arr.is_array()) throw ParseError("word: polynomial must be an array");
      std::vector<S> coeffs;
      for (const auto& c : arr) coeffs.push_back(read(c));
      w.push_back(is_phi ? Move<S>::phi(std::move(coeffs))
                         : Move<S>::psi(std::move(coeffs)));
    } else {
      throw ParseError("word: move must be phi, psi or theta");
    }
  }
  return w;
}

}  // namespace

Json word_to_json(const GroupWord<Rational>& w) { return word_json_impl(w); }
Json word_to_json(const GroupWord<Complex>& w) { return word_json_impl(w); }

WordVariant word_from_json(const Json& j, const TolerancePolicy& tol) {
  if (!j.is_array()) throw ParseError("word: expected an array of moves");
  bool rational = true;
  for (const auto& item : j)
    for (const auto& [key, val] : item.items()) {
      (void)key;
      const auto scan = [&](const Json& s) {
        if (!(s.is_string() || s.is_number_integer())) rational = false;
      };
      if (val.is_array())
        for (const auto& e : val) {
          if (e.is_array())
            for (const auto& ee : e) scan(ee);
          else
            scan(e);
        }
    }
  if (rational)
    return word_from_json_impl<Rational>(j, rational_from_json, tol);
  return word_from_json_impl<Complex>(j, complex_from_json, tol);
}

GroupWord<Complex> word_to_complex(const GroupWord<Rational>& w,
                                   const TolerancePolicy& tol) {
  GroupWord<Complex> out;
  out.reserve(w.size());
  for (const auto& mv : w) {
    if (mv.kind == Move<Rational>::Kind::Theta) {
      Eigen::Matrix<Complex, 2, 2> m;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = Complex(mv.m(i, j).get_d(), 0.0);
      out.push_back(Move<Complex>::theta(m, tol));
    } else {
      std::vector<Complex> coeffs;
      coeffs.reserve(mv.coeffs.size());
      for (const auto& c : mv.coeffs) coeffs.emplace_back(c.get_d(), 0.0);
      out.push_back(mv.kind == Move<Rational>::Kind::Phi
                        ? Move<Complex>::phi(std::move(coeffs))
                        : Move<Complex>::psi(std::move(coeffs)));
    }
  }
  return out;
}

Json quadruple_to_json(const CMQuadruple& q) {
  Json c = Json::array(), r = Json::array();
  for (int i = 0; i < q.n(); ++i) {
    c.push_back(scalar_to_json(q.c(i, 0)));
    r.push_back(scalar_to_json(q.r(0, i)));
  }
  return Json{{"X", matrix_to_json(q.x)},
              {"Y", matrix_to_json(q.y)},
              {"c", c},
              {"r", r}};
}

Json normalization_to_json(const NormalizationResult& r) {
  return Json{{"word", word_to_json(r.word)},
              {"terminal", tuple7_to_json(r.terminal)},
              {"residual", r.residual},
              {"branches", r.branches}};
}

Json read_json_file(const std::string& path) {
  Json j;
  if (path == "-") {
    try {
      j = Json::parse(std::cin);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("stdin: ") + e.what());
    }
    return j;
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file: " + path);
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

}  // namespace cm3
