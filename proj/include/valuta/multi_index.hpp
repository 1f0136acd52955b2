#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "valuta/rational.hpp"

namespace valuta {

/// Exponent vector (alpha(1), ..., alpha(n)) of a basis monomial e^alpha.
/// Stored inline: ambient dimensions up to kMaxDim, exponents up to 255.
class MultiIndex {
 public:
  static constexpr int kMaxDim = 16;

  MultiIndex() = default;
  explicit MultiIndex(int dim);
  MultiIndex(std::initializer_list<int> entries);
  explicit MultiIndex(const std::vector<int>& entries);

  static MultiIndex unit(int dim, int i) {
    MultiIndex a(dim);
    a.e_[static_cast<std::size_t>(i)] = 1;
    return a;
  }

  int dim() const { return n_; }
  int degree() const {
    int d = 0;
    for (int i = 0; i < n_; ++i) d += e_[static_cast<std::size_t>(i)];
    return d;
  }
  int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  void set(int i, int value);
  void increment(int i) { set(i, (*this)[i] + 1); }
  void decrement(int i) { set(i, (*this)[i] - 1); }

  MultiIndex operator+(const MultiIndex& other) const;

  std::vector<int> entries() const { return {e_.begin(), e_.begin() + n_}; }
  /// "a1,a2,...,an", the key format used by Tensor JSON.
  std::string key() const;
  static MultiIndex from_key(const std::string& key);

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  std::uint8_t n_ = 0;
  std::array<std::uint8_t, kMaxDim> e_{};
};

/// All multi-indices of length n and degree r, in ascending lexicographic order.
std::vector<MultiIndex> enumerate_multi_indices(int n, int r);

/// Visits every composition of r into n parts without materializing them.
void for_each_multi_index(int n, int r, const std::function<void(const MultiIndex&)>& visit);

/// binom(n + r - 1, r): dimension of the symmetric power T^r(R^n).
long tensor_dim(int n, int r);

long binomial(long n, long k);

/// alpha! = prod alpha(i)!
Rational multi_factorial(const MultiIndex& alpha);

/// r! / alpha! with r = |alpha|.
Rational multinomial(const MultiIndex& alpha);

}  // namespace valuta
