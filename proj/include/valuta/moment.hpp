#pragma once

#include <map>
#include <vector>

#include "valuta/multi_index.hpp"
#include "valuta/polytope.hpp"
#include "valuta/sym_tensor.hpp"

namespace valuta {

/// M^r(K) = (1/r!) int_K x^{(.)r} dx together with the body it was computed for.
/// The coefficient of e^alpha is (1/alpha!) int_K x^alpha dx.
template <class S>
struct MomentResult {
  SymTensor<S> tensor;
  const Polytope<S>* body = nullptr;
  int rank = 0;
};

namespace detail {

template <class S>
using Poly = std::map<MultiIndex, S>;

template <class S>
S from_rational(const Rational& q) {
  if constexpr (is_exact_v<S>)
    return q;
  else
    return to_double(q);
}

/// p * (c0 + sum_k a_k u_k)
template <class S>
Poly<S> times_affine_form(const Poly<S>& p, const S& c0, const Vector<S>& a) {
  Poly<S> out;
  auto accumulate = [&](const MultiIndex& beta, const S& c) {
    if (c == S(0)) return;
    auto [it, inserted] = out.try_emplace(beta, c);
    if (!inserted) it->second += c;
  };
  for (const auto& [beta, c] : p) {
    accumulate(beta, c * c0);
    for (Eigen::Index k = 0; k < a.size(); ++k) {
      if (a(k) == S(0)) continue;
      MultiIndex shifted = beta;
      shifted.increment(static_cast<int>(k));
      accumulate(shifted, c * a(k));
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == S(0); });
  return out;
}

/// int over the standard simplex {u >= 0, sum u <= 1} of u^beta: prod beta_i! / (n + |beta|)!.
template <class S>
class DirichletWeights {
 public:
  explicit DirichletWeights(int n) : n_(n) {}
  const S& operator()(const MultiIndex& beta) {
    auto it = cache_.find(beta);
    if (it != cache_.end()) return it->second;
    const Rational w = multi_factorial(beta) / factorial(n_ + beta.degree());
    return cache_.emplace(beta, from_rational<S>(w)).first->second;
  }

 private:
  int n_;
  std::map<MultiIndex, S> cache_;
};

/// Integrates sum_beta c_beta (v0 + A u)^... already expanded in u over the standard simplex.
template <class S>
S integrate_standard(const Poly<S>& p, DirichletWeights<S>& weights) {
  S total(0);
  for (const auto& [beta, c] : p) total += c * weights(beta);
  return total;
}

/// Adds the contribution of one full-dimensional cell to moments[0..max_rank].
template <class S>
void accumulate_cell_moments(const std::vector<Vector<S>>& pts, const Cell& cell, int max_rank,
                             DirichletWeights<S>& weights, std::vector<SymTensor<S>>& moments) {
  const Vector<S>& v0 = pts[static_cast<std::size_t>(cell[0])];
  const RMatrix<S> a = edge_matrix(pts, cell);
  const S jac = abs_value(determinant<S>(a));
  if (jac == S(0)) return;
  const int n = static_cast<int>(v0.size());

  // expansions[alpha] = prod_i (v0_i + (A u)_i)^alpha(i), built degree by degree.
  std::map<MultiIndex, Poly<S>> expansions;
  expansions[MultiIndex(n)] = Poly<S>{{MultiIndex(n), S(1)}};
  std::vector<Vector<S>> rows;
  for (int i = 0; i < n; ++i) rows.push_back(a.row(i).transpose());
  for (int r = 0; r <= max_rank; ++r) {
    for_each_multi_index(n, r, [&](const MultiIndex& alpha) {
      if (r > 0) {
        int i = n - 1;
        while (alpha[i] == 0) --i;
        MultiIndex prev = alpha;
        prev.decrement(i);
        expansions[alpha] = times_affine_form(expansions.at(prev), v0(i), rows[static_cast<std::size_t>(i)]);
      }
      const S integral = jac * integrate_standard(expansions.at(alpha), weights);
      moments[static_cast<std::size_t>(r)].add(alpha, integral / from_rational<S>(multi_factorial(alpha)));
    });
  }
}

}  // namespace detail

/// Exact int_S x^alpha dx over a full-dimensional simplex, via x = v0 + A u and the
/// Dirichlet formula on the standard simplex.
template <class S>
S monomial_integral_simplex(const Polytope<S>& simplex_body, const MultiIndex& alpha) {
  const int n = simplex_body.dim();
  if (alpha.dim() != n) throw DimensionError("monomial_integral_simplex: multi-index length mismatch");
  if (static_cast<int>(simplex_body.vertices().size()) != n + 1)
    throw GeometryError("monomial_integral_simplex needs n+1 vertices");
  Cell cell(static_cast<std::size_t>(n + 1));
  std::iota(cell.begin(), cell.end(), 0);
  const auto& pts = simplex_body.vertices();
  const RMatrix<S> a = detail::edge_matrix(pts, cell);
  const S jac = abs_value(determinant<S>(a));
  if (jac == S(0)) throw GeometryError("monomial_integral_simplex: degenerate simplex");

  detail::Poly<S> p{{MultiIndex(n), S(1)}};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < alpha[i]; ++k) p = detail::times_affine_form<S>(p, pts[0](i), a.row(i).transpose());
  detail::DirichletWeights<S> weights(n);
  return jac * detail::integrate_standard(p, weights);
}

/// M^0(K), ..., M^max_rank(K), summed over the cells of the triangulation in order.
template <class S>
std::vector<SymTensor<S>> moment_tensors(const Polytope<S>& body, int max_rank) {
  if (max_rank < 0) throw DimensionError("moment rank must be non-negative");
  if (!body.has_triangulation()) throw GeometryError("moment tensor needs a triangulated polytope");
  const int n = body.dim();
  std::vector<SymTensor<S>> moments;
  for (int r = 0; r <= max_rank; ++r) moments.emplace_back(n, r);
  detail::DirichletWeights<S> weights(n);
  for (const auto& cell : body.cells()) {
    // Lower-dimensional cells carry no n-dimensional mass.
    if (static_cast<int>(cell.size()) != n + 1) continue;
    detail::accumulate_cell_moments(body.vertices(), cell, max_rank, weights, moments);
  }
  return moments;
}

template <class S>
SymTensor<S> moment_tensor(const Polytope<S>& body, int r) {
  return moment_tensors(body, r).back();
}

template <class S>
MomentResult<S> moment(const Polytope<S>& body, int r) {
  return {moment_tensor(body, r), &body, r};
}

/// sum_{j=0}^r M^{r-j}(K) (.) y^{(.)j} / j!  (the value of M^r(K + y)).
template <class S>
SymTensor<S> covariance_expansion(const Polytope<S>& body, const Vector<S>& y, int r) {
  if (y.size() != body.dim()) throw DimensionError("covariance_expansion: dimension mismatch");
  const auto moments = moment_tensors(body, r);
  SymTensor<S> out(body.dim(), r);
  for (int j = 0; j <= r; ++j) {
    out += sym_product(moments[static_cast<std::size_t>(r - j)], vector_power(y, j)) *
           (S(1) / detail::from_rational<S>(factorial(j)));
  }
  return out;
}

}  // namespace valuta
