#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cm3/scalar.hpp"

namespace cm3 {

template <class S>
using DenseMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using ColVec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using RowVec = Eigen::Matrix<S, 1, Eigen::Dynamic>;

using RationalMatrix = DenseMatrix<Rational>;
using ComplexMatrix = DenseMatrix<Complex>;

enum class Letter { First, Second };
using TraceWord = std::vector<Letter>;

template <class S>
void require_square(const DenseMatrix<S>& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DimensionError(std::string(what) + ": matrix must be square, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
}

template <class S>
void require_same_shape(const DenseMatrix<S>& a, const DenseMatrix<S>& b,
                        const char* what) {
  require_square(a, what);
  require_square(b, what);
  if (a.rows() != b.rows())
    throw DimensionError(std::string(what) + ": dimension mismatch " +
                         std::to_string(a.rows()) + " vs " +
                         std::to_string(b.rows()));
}

template <class S>
DenseMatrix<S> identity_matrix(Eigen::Index n) {
  return DenseMatrix<S>::Identity(n, n);
}

template <class S>
DenseMatrix<S> zero_matrix(Eigen::Index n) {
  return DenseMatrix<S>::Zero(n, n);
}

// tr(Z_1 ... Z_k) where Z_i is `first` or `second` per the word.
template <class S>
S trace_word(const TraceWord& word, const DenseMatrix<S>& first,
             const DenseMatrix<S>& second) {
  if (word.empty()) throw DomainError("trace_word: empty word");
  require_same_shape(first, second, "trace_word");
  const auto& pick = [&](Letter l) -> const DenseMatrix<S>& {
    return l == Letter::First ? first : second;
  };
  DenseMatrix<S> prod = pick(word[0]);
  for (std::size_t i = 1; i < word.size(); ++i)
    prod = DenseMatrix<S>(prod * pick(word[i]));
  return prod.trace();
}

inline TraceWord word_from_string(const std::string& letters) {
  TraceWord w;
  w.reserve(letters.size());
  for (char c : letters) {
    if (c == 'A' || c == 'a' || c == 'X' || c == 'x' || c == '1')
      w.push_back(Letter::First);
    else if (c == 'B' || c == 'b' || c == 'Y' || c == 'y' || c == '2')
      w.push_back(Letter::Second);
    else
      throw ParseError(std::string("trace word letter must name the first or "
                                   "second matrix, got '") + c + "'");
  }
  return w;
}

template <class S>
DenseMatrix<S> commutator(const DenseMatrix<S>& x, const DenseMatrix<S>& y) {
  require_same_shape(x, y, "commutator");
  return x * y - y * x;
}

template <class S>
double matrix_scale(const DenseMatrix<S>& m) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      s = std::max(s, ScalarTraits<S>::magnitude(m(i, j)));
  return s;
}

template <class S>
bool is_zero_matrix(const DenseMatrix<S>& m, const TolerancePolicy& tol = {}) {
  const double scale = matrix_scale(m);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!ScalarTraits<S>::is_zero(m(i, j), tol, scale)) return false;
  return true;
}

}  // namespace cm3
