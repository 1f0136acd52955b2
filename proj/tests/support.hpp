#pragma once

#include <string>
#include <utility>
#include <vector>

#include "valuta/linalg.hpp"
#include "valuta/multi_index.hpp"
#include "valuta/sym_tensor.hpp"

namespace valuta::testing {

inline Rational q(const std::string& s) { return parse_rational(s); }

inline VectorQ vec(std::initializer_list<const char*> entries) {
  VectorQ v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const char* e : entries) v(i++) = parse_rational(e);
  return v;
}

inline MatrixQ mat(std::initializer_list<std::initializer_list<const char*>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = static_cast<Eigen::Index>(rows.begin()->size());
  MatrixQ a(n, m);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (const char* e : row) a(r, c++) = parse_rational(e);
    ++r;
  }
  return a;
}

inline SymTensorQ tensor(int n, int r, std::vector<std::pair<MultiIndex, const char*>> coeffs) {
  SymTensorQ t(n, r);
  for (const auto& [a, c] : coeffs) t.add(a, parse_rational(c));
  return t;
}

inline VectorQ unit_vec(int n, int i) {
  VectorQ v = VectorQ::Zero(n);
  v(i) = 1;
  return v;
}

}  // namespace valuta::testing
