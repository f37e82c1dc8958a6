#pragma once

#include <algorithm>
#include <cstdlib>

#include "cm3/matrix.hpp"

namespace cm3 {

namespace detail {

// Fraction-free (Bareiss) forward elimination. Exact over any exact scalar;
// keeps intermediate entries as quotients of minors, which bounds blowup.
// Returns the number of pivots; fills `det` with the determinant when the
// matrix is square and elimination ran to completion.
inline int bareiss_eliminate(RationalMatrix m, Rational* det_out) {
  const Eigen::Index n = m.rows(), cols = m.cols();
  Rational prev(1);
  int sign = 1;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < n; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = row; i < n; ++i)
      if (m(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row) {
      m.row(piv).swap(m.row(row));
      sign = -sign;
    }
    const Rational pivot = m(row, col);
    for (Eigen::Index i = row + 1; i < n; ++i) {
      for (Eigen::Index j = col + 1; j < cols; ++j)
        m(i, j) = (m(i, j) * pivot - m(i, col) * m(row, j)) / prev;
      m(i, col) = 0;
    }
    prev = pivot;
    ++row;
  }
  if (det_out) {
    if (row < n)
      *det_out = 0;
    else
      *det_out = sign > 0 ? prev : Rational(-prev);
  }
  return static_cast<int>(row);
}

struct ComplexElimination {
  int rank = 0;
  Complex det = 0.0;
  double smallest_kept = 0.0;   // smallest pivot magnitude counted
  double largest_dropped = 0.0; // largest pivot magnitude discarded
};

inline ComplexElimination eliminate_complex(ComplexMatrix m,
                                            const TolerancePolicy& tol) {
  const Eigen::Index n = m.rows(), cols = m.cols();
  const double thresh = tol.threshold(matrix_scale(m));
  ComplexElimination out;
  Complex det(1.0, 0.0);
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < n; ++col) {
    Eigen::Index piv = row;
    double best = std::abs(m(row, col));
    for (Eigen::Index i = row + 1; i < n; ++i) {
      const double a = std::abs(m(i, col));
      if (a > best) {
        best = a;
        piv = i;
      }
    }
    if (best <= thresh) {
      out.largest_dropped = std::max(out.largest_dropped, best);
      continue;
    }
    if (piv != row) {
      m.row(piv).swap(m.row(row));
      det = -det;
    }
    const Complex pivot = m(row, col);
    det *= pivot;
    out.smallest_kept = out.smallest_kept == 0.0
                            ? best
                            : std::min(out.smallest_kept, best);
    for (Eigen::Index i = row + 1; i < n; ++i) {
      const Complex f = m(i, col) / pivot;
      for (Eigen::Index j = col + 1; j < cols; ++j) m(i, j) -= f * m(row, j);
      m(i, col) = 0.0;
    }
    ++row;
  }
  out.rank = static_cast<int>(row);
  out.det = (row == n && n == cols) ? det : Complex(0.0, 0.0);
  return out;
}

}  // namespace detail

inline Rational det(const RationalMatrix& m) {
  require_square(m, "det");
  Rational d;
  detail::bareiss_eliminate(m, &d);
  return d;
}

inline Complex det(const ComplexMatrix& m, const TolerancePolicy& tol = {}) {
  require_square(m, "det");
  return detail::eliminate_complex(m, tol).det;
}

inline int rank(const RationalMatrix& m, const TolerancePolicy& = {}) {
  require_square(m, "rank");
  return detail::bareiss_eliminate(m, nullptr);
}

inline int rank(const ComplexMatrix& m, const TolerancePolicy& tol = {}) {
  require_square(m, "rank");
  return detail::eliminate_complex(m, tol).rank;
}

// Exact inverse by Gauss-Jordan with first-nonzero pivoting.
inline RationalMatrix inverse(const RationalMatrix& m) {
  require_square(m, "inverse");
  const Eigen::Index n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = identity_matrix<Rational>(n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = col; i < n; ++i)
      if (a(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw ConstructionError("inverse: singular matrix");
    if (piv != col) {
      a.row(piv).swap(a.row(col));
      inv.row(piv).swap(inv.row(col));
    }
    const Rational p = a(col, col);
    a.row(col) /= p;
    inv.row(col) /= p;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      a.row(i) -= f * a.row(col);
      inv.row(i) -= f * inv.row(col);
    }
  }
  return inv;
}

struct RankDecision {
  int value = 0;
  bool ambiguous = false;
};

// Rank with a guard band: a pivot magnitude inside (threshold, 10*threshold)
// means the kept/dropped split is not trustworthy and the caller must not
// silently pick a stratum.
inline RankDecision rank_guarded(const ComplexMatrix& m,
                                 const TolerancePolicy& tol = {}) {
  require_square(m, "rank");
  const auto e = detail::eliminate_complex(m, tol);
  const double thresh = tol.threshold(matrix_scale(m));
  RankDecision out;
  out.value = e.rank;
  out.ambiguous = (e.largest_dropped > thresh / 10.0 && e.largest_dropped > 0) ||
                  (e.smallest_kept > 0 && e.smallest_kept < 10.0 * thresh);
  return out;
}

}  // namespace cm3
