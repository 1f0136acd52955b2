#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "valuta/linalg.hpp"
#include "valuta/multi_index.hpp"
#include "valuta/rational.hpp"

namespace valuta {

/// Symmetric r-tensor on R^n in the monomial basis e^{(.)alpha} = e_1^alpha(1) (.) ... (.) e_n^alpha(n).
///
/// T(R^n) is identified with the polynomial ring in e_1..e_n, so the symmetric
/// product is polynomial multiplication. Zero coefficients are never stored.
template <class S>
class SymTensor {
 public:
  using Coeffs = std::map<MultiIndex, S>;

  SymTensor() = default;
  SymTensor(int dim, int rank) : dim_(dim), rank_(rank) {
    if (dim < 1 || dim > MultiIndex::kMaxDim) throw DimensionError("tensor dimension out of range");
    if (rank < 0) throw DimensionError("tensor rank must be non-negative");
  }

  static SymTensor scalar(int dim, const S& value) {
    SymTensor t(dim, 0);
    t.add(MultiIndex(dim), value);
    return t;
  }

  static SymTensor monomial(const MultiIndex& alpha, const S& value = S(1)) {
    SymTensor t(alpha.dim(), alpha.degree());
    t.add(alpha, value);
    return t;
  }

  /// e_i as a rank-one tensor.
  static SymTensor unit(int dim, int i) { return monomial(MultiIndex::unit(dim, i)); }

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  S coeff(const MultiIndex& alpha) const {
    auto it = coeffs_.find(alpha);
    return it == coeffs_.end() ? S(0) : it->second;
  }

  /// Scalar value of a rank-0 tensor.
  S value() const {
    if (rank_ != 0) throw DimensionError("value() needs a rank-0 tensor");
    return coeff(MultiIndex(dim_));
  }

  void add(const MultiIndex& alpha, const S& c) {
    if (alpha.dim() != dim_ || alpha.degree() != rank_)
      throw DimensionError("monomial " + alpha.key() + " does not fit tensor of rank " +
                           std::to_string(rank_) + " on R^" + std::to_string(dim_));
    if (c == S(0)) return;
    auto [it, inserted] = coeffs_.try_emplace(alpha, c);
    if (!inserted) {
      it->second += c;
      if (it->second == S(0)) coeffs_.erase(it);
    }
  }

  void set(const MultiIndex& alpha, const S& c) {
    coeffs_.erase(alpha);
    add(alpha, c);
  }

  /// Drops coefficients with magnitude below tol (no-op for exact scalars).
  SymTensor& prune(double tol) {
    if constexpr (!is_exact_v<S>) std::erase_if(coeffs_, [&](const auto& kv) { return std::abs(kv.second) <= tol; });
    return *this;
  }

  SymTensor& operator+=(const SymTensor& o) {
    check_same_space(o);
    for (const auto& [a, c] : o.coeffs_) add(a, c);
    return *this;
  }
  SymTensor& operator-=(const SymTensor& o) {
    check_same_space(o);
    for (const auto& [a, c] : o.coeffs_) add(a, -c);
    return *this;
  }
  SymTensor& operator*=(const S& s) {
    if (s == S(0)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& kv : coeffs_) kv.second *= s;
    return *this;
  }

  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  friend SymTensor operator-(SymTensor a) { return a *= S(-1); }
  friend SymTensor operator*(SymTensor a, const S& s) { return a *= s; }
  friend SymTensor operator*(const S& s, SymTensor a) { return a *= s; }

  friend bool operator==(const SymTensor& a, const SymTensor& b) {
    return a.dim_ == b.dim_ && a.rank_ == b.rank_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_same_space(const SymTensor& o) const {
    if (o.dim_ != dim_ || o.rank_ != rank_) throw DimensionError("tensor space mismatch");
  }

  int dim_ = 1;
  int rank_ = 0;
  Coeffs coeffs_;
};

using SymTensorQ = SymTensor<Rational>;

/// Symmetric product a (.) b: convolution of the coefficient maps.
template <class S>
SymTensor<S> sym_product(const SymTensor<S>& a, const SymTensor<S>& b) {
  if (a.dim() != b.dim()) throw DimensionError("sym_product: dimension mismatch");
  SymTensor<S> out(a.dim(), a.rank() + b.rank());
  for (const auto& [alpha, ca] : a.coeffs())
    for (const auto& [beta, cb] : b.coeffs()) out.add(alpha + beta, ca * cb);
  return out;
}

/// x^{(.)r}: coefficient of alpha is multinomial(r; alpha) * prod x_i^alpha(i).
template <class S>
SymTensor<S> vector_power(const Vector<S>& x, int r) {
  const int n = static_cast<int>(x.size());
  if (r < 0) throw DimensionError("vector_power: negative exponent");
  SymTensor<S> out(n, r);
  for_each_multi_index(n, r, [&](const MultiIndex& alpha) {
    S c = [&] {
      if constexpr (is_exact_v<S>)
        return multinomial(alpha);
      else
        return to_double(multinomial(alpha));
    }();
    for (int i = 0; i < n && c != S(0); ++i) c *= power(x(i), alpha[i]);
    out.add(alpha, c);
  });
  return out;
}

/// Natural GL(n) action: every e_i in every basis monomial is replaced by phi e_i.
template <class S>
SymTensor<S> gl_action(const RMatrix<S>& phi, const SymTensor<S>& t) {
  const int n = t.dim();
  if (phi.rows() != n || phi.cols() != n) throw DimensionError("gl_action: dimension mismatch");
  SymTensor<S> out(n, t.rank());
  if (t.is_zero()) return out;

  // powers[i][k] = (phi e_i)^{(.)k}
  std::vector<std::vector<SymTensor<S>>> powers(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& pi = powers[static_cast<std::size_t>(i)];
    pi.push_back(SymTensor<S>::scalar(n, S(1)));
    SymTensor<S> column(n, 1);
    for (int l = 0; l < n; ++l) column.add(MultiIndex::unit(n, l), phi(l, i));
    for (int k = 1; k <= t.rank(); ++k) pi.push_back(sym_product(pi.back(), column));
  }

  // Products are memoized by multi-index prefix so shared prefixes are expanded once.
  std::map<MultiIndex, SymTensor<S>> cache;
  std::function<const SymTensor<S>&(const MultiIndex&)> image = [&](const MultiIndex& alpha) -> const SymTensor<S>& {
    auto it = cache.find(alpha);
    if (it != cache.end()) return it->second;
    int last = n - 1;
    while (last > 0 && alpha[last] == 0) --last;
    MultiIndex prefix = alpha;
    prefix.set(last, 0);
    const auto& factor = powers[static_cast<std::size_t>(last)][static_cast<std::size_t>(alpha[last])];
    SymTensor<S> value = prefix.degree() == 0 ? factor : sym_product(image(prefix), factor);
    return cache.emplace(alpha, std::move(value)).first->second;
  };

  for (const auto& [alpha, c] : t.coeffs()) out += image(alpha) * c;
  return out;
}

/// Largest coefficient difference |a_alpha - b_alpha| in the monomial basis.
template <class S>
S max_abs_diff(const SymTensor<S>& a, const SymTensor<S>& b) {
  if (a.dim() != b.dim() || a.rank() != b.rank()) throw DimensionError("max_abs_diff: tensor space mismatch");
  const SymTensor<S> diff = a - b;
  S best(0);
  for (const auto& kv : diff.coeffs()) best = std::max(best, abs_value(kv.second));
  return best;
}

template <class S>
S max_abs_coeff(const SymTensor<S>& a) {
  S best(0);
  for (const auto& kv : a.coeffs()) best = std::max(best, abs_value(kv.second));
  return best;
}

template <class To, class From>
SymTensor<To> cast_tensor(const SymTensor<From>& t) {
  SymTensor<To> out(t.dim(), t.rank());
  for (const auto& [alpha, c] : t.coeffs()) {
    if constexpr (std::is_same_v<To, double>)
      out.add(alpha, to_double(c));
    else
      out.add(alpha, To(c));
  }
  return out;
}

/// Sum of all coefficients of a tensor, as a rank-0 tensor.
template <class S>
SymTensor<S> coefficient_sum(const SymTensor<S>& t) {
  S total(0);
  for (const auto& kv : t.coeffs()) total += kv.second;
  return SymTensor<S>::scalar(t.dim(), total);
}

}  // namespace valuta
