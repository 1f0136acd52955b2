#pragma once

#include <complex>
#include <vector>

#include <Eigen/SVD>

#include "valuta/linalg.hpp"
#include "valuta/random.hpp"
#include "valuta/subspace.hpp"

namespace valuta {

/// Complex number over an ordered field (rationals or doubles).
template <class S>
struct Complex {
  S re{0};
  S im{0};

  Complex() = default;
  Complex(S r, S i = S(0)) : re(std::move(r)), im(std::move(i)) {}

  S norm_sq() const { return re * re + im * im; }
  Complex conj() const { return {re, -im}; }
  bool is_zero() const { return re == S(0) && im == S(0); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const S d = b.norm_sq();
    if (d == S(0)) throw NumericError("complex division by zero");
    const Complex num = a * b.conj();
    return {num.re / d, num.im / d};
  }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

using ComplexQ = Complex<Rational>;

/// Complex m x m matrix stored as real and imaginary parts.
template <class S>
struct CMatrix {
  RMatrix<S> re;
  RMatrix<S> im;

  CMatrix() = default;
  CMatrix(RMatrix<S> r, RMatrix<S> i) : re(std::move(r)), im(std::move(i)) {
    if (re.rows() != re.cols() || im.rows() != re.rows() || im.cols() != re.cols())
      throw DimensionError("complex matrix must be square with matching parts");
  }

  static CMatrix identity(int m) { return {RMatrix<S>::Identity(m, m), RMatrix<S>::Zero(m, m)}; }
  static CMatrix zero(int m) { return {RMatrix<S>::Zero(m, m), RMatrix<S>::Zero(m, m)}; }

  int size() const { return static_cast<int>(re.rows()); }
  Complex<S> operator()(int i, int j) const { return {re(i, j), im(i, j)}; }
  void set(int i, int j, const Complex<S>& z) {
    re(i, j) = z.re;
    im(i, j) = z.im;
  }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.size() != b.size()) throw DimensionError("complex matrix product: size mismatch");
    return {RMatrix<S>(a.re * b.re - a.im * b.im), RMatrix<S>(a.re * b.im + a.im * b.re)};
  }
  friend bool operator==(const CMatrix& a, const CMatrix& b) { return a.re == b.re && a.im == b.im; }
};

using CMatrixQ = CMatrix<Rational>;

/// [[Re A, -Im A], [Im A, Re A]]: the matrix of A under (x + i y) -> (x, y).
template <class S>
RMatrix<S> realify(const CMatrix<S>& a) {
  const int m = a.size();
  RMatrix<S> r(2 * m, 2 * m);
  r.topLeftCorner(m, m) = a.re;
  r.topRightCorner(m, m) = -a.im;
  r.bottomLeftCorner(m, m) = a.im;
  r.bottomRightCorner(m, m) = a.re;
  return r;
}

namespace detail {

template <class S>
using ComplexRows = std::vector<std::vector<Complex<S>>>;

/// Row-reduces in place; returns the rank. Exact pivots for rationals, largest modulus for floats.
template <class S>
int complex_eliminate(ComplexRows<S>& a, int cols, double tol, Complex<S>* det_out = nullptr) {
  const int rows = static_cast<int>(a.size());
  int rank = 0;
  Complex<S> det(S(1));
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i) {
      const S mod = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].norm_sq();
      if (is_zero(mod, tol * tol)) continue;
      if constexpr (is_exact_v<S>) {
        pivot = i;
        break;
      } else if (pivot < 0 || mod > a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(c)].norm_sq()) {
        pivot = i;
      }
    }
    if (pivot < 0) {
      det = Complex<S>(S(0));
      continue;
    }
    if (pivot != rank) {
      std::swap(a[static_cast<std::size_t>(pivot)], a[static_cast<std::size_t>(rank)]);
      det = -det;
    }
    const auto& prow = a[static_cast<std::size_t>(rank)];
    det = det * prow[static_cast<std::size_t>(c)];
    for (int i = rank + 1; i < rows; ++i) {
      auto& row = a[static_cast<std::size_t>(i)];
      if (row[static_cast<std::size_t>(c)].is_zero()) continue;
      const Complex<S> f = row[static_cast<std::size_t>(c)] / prow[static_cast<std::size_t>(c)];
      for (int j = c; j < cols; ++j)
        row[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j)] - f * prow[static_cast<std::size_t>(j)];
    }
    ++rank;
  }
  if (det_out) *det_out = rank == rows ? det : Complex<S>(S(0));
  return rank;
}

}  // namespace detail

/// det_C by Gaussian elimination over Q(i) (or C for floats).
template <class S>
Complex<S> det_c(const CMatrix<S>& a) {
  const int m = a.size();
  detail::ComplexRows<S> rows(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) rows[static_cast<std::size_t>(i)].push_back(a(i, j));
  Complex<S> det;
  detail::complex_eliminate<S>(rows, m, 0.0, &det);
  return det;
}

/// det_R(realify A) == |det_C A|^2 (exact for rational input, relative 1e-9 otherwise).
template <class S>
bool det_identity_check(const CMatrix<S>& a) {
  const S lhs = determinant<S>(realify(a));
  const S rhs = det_c(a).norm_sq();
  if constexpr (is_exact_v<S>)
    return lhs == rhs;
  else
    return std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs));
}

/// Rank over C of the columns of a real 2m x j matrix read as complex m-vectors x + i y.
template <class S>
int complex_rank(const RMatrix<S>& vectors, double tol = 1e-8) {
  if (vectors.rows() % 2 != 0) throw DimensionError("complex_rank: ambient dimension must be even");
  const int m = static_cast<int>(vectors.rows() / 2);
  const int j = static_cast<int>(vectors.cols());
  if constexpr (is_exact_v<S>) {
    detail::ComplexRows<S> rows(static_cast<std::size_t>(j));
    for (int c = 0; c < j; ++c)
      for (int i = 0; i < m; ++i) rows[static_cast<std::size_t>(c)].emplace_back(vectors(i, c), vectors(m + i, c));
    return detail::complex_eliminate<S>(rows, m, 0.0);
  } else {
    Eigen::MatrixXcd z(m, j);
    for (int c = 0; c < j; ++c)
      for (int i = 0; i < m; ++i) z(i, c) = {vectors(i, c), vectors(m + i, c)};
    if (j == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(z);
    int rank = 0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
      if (svd.singularValues()(k) > tol) ++rank;
    return rank;
  }
}

template <class S>
int complex_rank(const Subspace<S>& l, double tol = 1e-8) {
  return complex_rank<S>(l.basis, tol);
}

/// Identity plus `entry` at (row, col), row != col. Determinant exactly one.
template <class S>
CMatrix<S> sl_shear(int m, int row, int col, const Complex<S>& entry) {
  if (row == col || row < 0 || col < 0 || row >= m || col >= m) throw std::invalid_argument("sl_shear: bad position");
  CMatrix<S> a = CMatrix<S>::identity(m);
  a.set(row, col, entry);
  return a;
}

/// diag(lambda_1, ..., lambda_m); the entries must multiply to one.
template <class S>
CMatrix<S> sl_diag(const std::vector<Complex<S>>& lambdas) {
  const int m = static_cast<int>(lambdas.size());
  if (m < 1) throw std::invalid_argument("sl_diag: empty parameter list");
  Complex<S> prod(S(1));
  for (const auto& l : lambdas) prod = prod * l;
  const bool unit = [&] {
    if constexpr (is_exact_v<S>)
      return prod == Complex<S>(S(1));
    else
      return std::abs(prod.re - 1.0) <= 1e-12 && std::abs(prod.im) <= 1e-12;
  }();
  if (!unit) throw std::invalid_argument("sl_diag: parameters must multiply to 1");
  CMatrix<S> a = CMatrix<S>::zero(m);
  for (int i = 0; i < m; ++i) a.set(i, i, lambdas[static_cast<std::size_t>(i)]);
  return a;
}

/// Product of `count` random shears with small Gaussian-rational entries; det_C is exactly one.
CMatrixQ random_shear_product(Rng& rng, int m, int count);

/// Random complex matrix with small Gaussian-rational entries (not necessarily invertible).
CMatrixQ random_complex_matrix(Rng& rng, int m, int max_num, int max_den);

/// Float SU(m) sample: QR of a complex Gaussian matrix, phase-corrected to det 1.
CMatrix<double> random_special_unitary(Rng& rng, int m);

/// Orthonormal basis (Gram-Schmidt in column order) for the span of the given columns, with complex rank filled in.
Subspace<double> make_subspace(const RMatrix<double>& spanning);

/// Wraps exactly orthonormal rational columns; throws if they are not orthonormal.
Subspace<Rational> exact_subspace(const MatrixQ& orthonormal);

/// Basis of the form v_1..v_d, J v_1..J v_{j-d} spanning the same subspace.
///
/// U = L cap JL is found as a nullspace (SVD, threshold 1e-8); a Hermitian basis
/// u_1..u_k of U and an orthonormal basis w_1..w_t of its complement in L are
/// obtained by Gram-Schmidt on the projected input vectors, in input order.
/// Singular values in [1e-10, 1e-6] make the rank ambiguous and raise NumericError.
Subspace<double> adapted_basis(const Subspace<double>& l);

struct SampledSubspace {
  Subspace<double> subspace;
  int retries = 0;
};

/// Gaussian j-frame in R^{2m}, orthonormalized; redrawn while its complex rank is below min(j, m).
SampledSubspace sample_subspace(int m, int j, Rng& rng);

/// Largest deviation of B^T B from the identity.
double orthonormality_defect(const RMatrix<double>& basis);

/// max(|P_A B - B|, |P_B A - A|) for orthonormal column bases A and B.
double span_residual(const RMatrix<double>& a, const RMatrix<double>& b);

/// Whether b_{d+l} == J b_l holds exactly for l = 1..j-d.
template <class S>
bool has_adapted_form(const Subspace<S>& l) {
  const int m = l.ambient_dim() / 2;
  const int d = l.complex_rank;
  const RMatrix<S> jmat = complex_structure<S>(m);
  for (int k = 0; d + k < l.dim(); ++k)
    if (!(l.basis.col(d + k) == Vector<S>(jmat * l.basis.col(k)))) return false;
  return true;
}

}  // namespace valuta
