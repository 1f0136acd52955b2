#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "valuta/rational.hpp"

namespace valuta {

template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
using RMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using VectorQ = Vector<Rational>;
using MatrixQ = RMatrix<Rational>;

template <class S>
RMatrix<S> identity(int n) {
  return RMatrix<S>::Identity(n, n);
}

template <class S>
RMatrix<S> diagonal(const std::vector<S>& entries) {
  const int n = static_cast<int>(entries.size());
  RMatrix<S> d = RMatrix<S>::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = entries[static_cast<std::size_t>(i)];
  return d;
}

template <class To, class From>
RMatrix<To> cast_matrix(const RMatrix<From>& m) {
  RMatrix<To> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<To, double>)
        out(i, j) = to_double(m(i, j));
      else
        out(i, j) = To(m(i, j));
    }
  return out;
}

template <class To, class From>
Vector<To> cast_vector(const Vector<From>& v) {
  Vector<To> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if constexpr (std::is_same_v<To, double>)
      out(i) = to_double(v(i));
    else
      out(i) = To(v(i));
  }
  return out;
}

/// Row pivot choice: any nonzero entry for exact scalars, largest magnitude for floats.
template <class S>
std::optional<Eigen::Index> find_pivot(const RMatrix<S>& a, Eigen::Index col, Eigen::Index from,
                                       double tol) {
  std::optional<Eigen::Index> best;
  for (Eigen::Index i = from; i < a.rows(); ++i) {
    if (is_zero(a(i, col), tol)) continue;
    if constexpr (is_exact_v<S>) {
      return i;
    } else {
      if (!best || std::abs(a(i, col)) > std::abs(a(*best, col))) best = i;
    }
  }
  return best;
}

/// Determinant by Gaussian elimination; exact for rational input.
template <class S>
S determinant(RMatrix<S> a) {
  if (a.rows() != a.cols()) throw DimensionError("determinant of a non-square matrix");
  const Eigen::Index n = a.rows();
  S det(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    auto p = find_pivot(a, c, c, 0.0);
    if (!p) return S(0);
    if (*p != c) {
      a.row(*p).swap(a.row(c));
      det = -det;
    }
    det *= a(c, c);
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (is_zero(a(i, c), 0.0)) continue;
      const S f = a(i, c) / a(c, c);
      for (Eigen::Index j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

/// Reduced row echelon form in place; returns pivot columns.
template <class S>
std::vector<Eigen::Index> rref(RMatrix<S>& a, double tol = 1e-12) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < a.cols() && row < a.rows(); ++c) {
    auto p = find_pivot(a, c, row, tol);
    if (!p) continue;
    if (*p != row) a.row(*p).swap(a.row(row));
    const S inv = S(1) / a(row, c);
    for (Eigen::Index j = c; j < a.cols(); ++j) a(row, j) *= inv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == row || is_zero(a(i, c), 0.0)) continue;
      const S f = a(i, c);
      for (Eigen::Index j = c; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

template <class S>
int matrix_rank(RMatrix<S> a, double tol = 1e-12) {
  return static_cast<int>(rref(a, tol).size());
}

/// Columns form a basis of ker(a), one column per free variable with that variable set to 1.
template <class S>
RMatrix<S> nullspace(RMatrix<S> a, double tol = 1e-12) {
  const auto pivots = rref(a, tol);
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0, p = 0; c < a.cols(); ++c) {
    if (p < static_cast<Eigen::Index>(pivots.size()) && pivots[static_cast<std::size_t>(p)] == c)
      ++p;
    else
      free.push_back(c);
  }
  RMatrix<S> basis = RMatrix<S>::Zero(a.cols(), static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], static_cast<Eigen::Index>(k)) = S(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      basis(pivots[r], static_cast<Eigen::Index>(k)) = -a(static_cast<Eigen::Index>(r), free[k]);
  }
  return basis;
}

/// Solves a x = b for square nonsingular a.
template <class S>
Vector<S> solve(const RMatrix<S>& a, const Vector<S>& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) throw DimensionError("solve: shape mismatch");
  RMatrix<S> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  const auto pivots = rref(aug, 0.0);
  if (static_cast<Eigen::Index>(pivots.size()) != a.rows() ||
      (!pivots.empty() && pivots.back() == a.cols()))
    throw NumericError("solve: singular system");
  return aug.col(a.cols());
}

template <class S>
RMatrix<S> inverse(const RMatrix<S>& a) {
  if (a.rows() != a.cols()) throw DimensionError("inverse of a non-square matrix");
  const Eigen::Index n = a.rows();
  RMatrix<S> aug(n, 2 * n);
  aug << a, RMatrix<S>::Identity(n, n);
  const auto pivots = rref(aug, 0.0);
  if (static_cast<Eigen::Index>(pivots.size()) < n || pivots[static_cast<std::size_t>(n - 1)] != n - 1)
    throw NumericError("inverse of a singular matrix");
  return aug.rightCols(n);
}

template <class S>
S max_abs(const RMatrix<S>& a) {
  S best(0);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) best = std::max(best, abs_value(S(a(i, j))));
  return best;
}

/// The complex structure J on R^{2m}: (x, y) -> (-y, x).
template <class S>
RMatrix<S> complex_structure(int m) {
  RMatrix<S> j = RMatrix<S>::Zero(2 * m, 2 * m);
  for (int l = 0; l < m; ++l) {
    j(l, m + l) = S(-1);
    j(m + l, l) = S(1);
  }
  return j;
}

}  // namespace valuta
