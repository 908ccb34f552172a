#ifndef APHJ_INTEGER_MATRIX_HPP
#define APHJ_INTEGER_MATRIX_HPP

#include "aphj/errors.hpp"
#include "aphj/rational.hpp"

#include <cstddef>
#include <vector>

namespace aphj {

// Dense matrix of arbitrary-precision integers.  Generator counts stay
// small (<= 10^2 rows), so naive row reduction is the right tool.
struct IntegerMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<Int>> a;

  IntegerMatrix() = default;
  IntegerMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), a(r, std::vector<Int>(c, Int(0))) {}

  std::vector<Int>& operator[](std::size_t i) { return a[i]; }
  const std::vector<Int>& operator[](std::size_t i) const { return a[i]; }

  friend bool operator==(const IntegerMatrix& x, const IntegerMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

namespace detail {
// Floor division quotient; C++ integer division truncates toward zero.
inline Int fdiv_q(const Int& n, const Int& d) {
  Int q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}
} // namespace detail

// Canonical row-style Hermite normal form.  Row echelon with positive
// pivots and the entries above each pivot reduced into [0, pivot); zero
// rows are dropped.  The result is the unique canonical basis of the row
// lattice, so equal lattices compare equal with operator==.
inline IntegerMatrix hnf(IntegerMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    // Euclidean elimination on column c over rows [r, rows).
    for (;;) {
      std::size_t best = m.rows;
      for (std::size_t i = r; i < m.rows; ++i) {
        if (m[i][c] == 0) continue;
        if (best == m.rows || abs(m[i][c]) < abs(m[best][c])) best = i;
      }
      if (best == m.rows) break; // column is zero below r
      std::swap(m.a[best], m.a[r]);
      bool clean = true;
      for (std::size_t i = r + 1; i < m.rows; ++i) {
        if (m[i][c] == 0) continue;
        Int q = m[i][c] / m[r][c]; // truncated quotient is fine for Euclid
        if (q != 0)
          for (std::size_t j = c; j < m.cols; ++j) m[i][j] -= q * m[r][j];
        if (m[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (m[r][c] == 0) continue;
    if (m[r][c] < 0)
      for (std::size_t j = c; j < m.cols; ++j) m[r][j] = -m[r][j];
    for (std::size_t i = 0; i < r; ++i) {
      Int q = detail::fdiv_q(m[i][c], m[r][c]);
      if (q != 0)
        for (std::size_t j = c; j < m.cols; ++j) m[i][j] -= q * m[r][j];
    }
    ++r;
  }
  m.a.resize(r);
  m.rows = r;
  return m;
}

// Solves x * basis = target over Z for an HNF (row echelon) basis.
// Returns false when no integer solution exists.
inline bool solve_in_lattice(const IntegerMatrix& basis,
                             std::vector<Int> target,
                             std::vector<Int>& coeffs) {
  coeffs.assign(basis.rows, Int(0));
  std::size_t col = 0;
  for (std::size_t i = 0; i < basis.rows; ++i) {
    while (col < basis.cols && basis[i][col] == 0) ++col;
    if (col == basis.cols) break;
    if (target[col] % basis[i][col] != 0) return false;
    Int q = target[col] / basis[i][col];
    coeffs[i] = q;
    if (q != 0)
      for (std::size_t j = col; j < basis.cols; ++j)
        target[j] -= q * basis[i][j];
  }
  for (const auto& t : target)
    if (t != 0) return false;
  return true;
}

} // namespace aphj

#endif
