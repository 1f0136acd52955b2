#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "valuta/complex.hpp"
#include "valuta/moment.hpp"
#include "valuta/polytope.hpp"
#include "valuta/sym_tensor.hpp"

namespace valuta {

enum class Parity { even, odd, none };
enum class TranslationBehavior { invariant, covariant, none };

/// A tensor valuation K -> T^rank(R^dim) with its declared properties.
template <class S>
struct Valuation {
  std::string name;
  int rank = 0;
  int dim = 1;
  Parity parity = Parity::none;
  TranslationBehavior translation = TranslationBehavior::none;
  std::function<SymTensor<S>(const Polytope<S>&)> evaluator;

  SymTensor<S> operator()(const Polytope<S>& body) const {
    if (body.dim() != dim)
      throw DimensionError("valuation '" + name + "' expects bodies in R^" + std::to_string(dim));
    SymTensor<S> value = evaluator(body);
    if (value.rank() != rank || value.dim() != dim)
      throw DimensionError("valuation '" + name + "' returned a tensor of the wrong rank or dimension");
    return value;
  }
};

/// Outcome of a verification: worst residual over all witnesses.
struct Report {
  std::string check;
  std::vector<std::string> witnesses;
  std::variant<Rational, double> max_residual = 0.0;
  bool pass = false;
};

/// Klain value Z(K) / V_j(K) for bodies K in L.
template <class S>
struct KlainValue {
  Subspace<S> subspace;
  SymTensor<S> value;
  int degree = 0;
  S probe_residual{0};  ///< difference between the cube and simplex probes
};

namespace detail {

template <class S>
S rational_scalar(const Rational& q) {
  if constexpr (is_exact_v<S>)
    return q;
  else
    return to_double(q);
}

template <class S>
std::variant<Rational, double> residual_variant(const S& r) {
  if constexpr (is_exact_v<S>)
    return r;
  else
    return r;
}

template <class S>
bool residual_ok(const S& r, double tol) {
  if constexpr (is_exact_v<S>)
    return r == 0;
  else
    return r <= tol;
}

}  // namespace detail

// Stock valuations ----------------------------------------------------------

template <class S>
Valuation<S> volume_valuation(int n) {
  return {"volume", 0, n, Parity::even, TranslationBehavior::invariant,
          [n](const Polytope<S>& k) { return SymTensor<S>::scalar(n, volume(k)); }};
}

template <class S>
Valuation<S> moment_valuation(int n, int r) {
  return {"moment" + std::to_string(r), r, n, r % 2 == 0 ? Parity::even : Parity::odd,
          r == 0 ? TranslationBehavior::invariant : TranslationBehavior::covariant,
          [r](const Polytope<S>& k) { return moment_tensor(k, r); }};
}

/// chi(K) = 1 for every non-empty body.
template <class S>
Valuation<S> euler_characteristic(int n) {
  return {"euler", 0, n, Parity::even, TranslationBehavior::invariant,
          [n](const Polytope<S>&) { return SymTensor<S>::scalar(n, S(1)); }};
}

template <class S>
Valuation<S> zero_valuation(int n, int r) {
  return {"zero", r, n, Parity::even, TranslationBehavior::invariant,
          [n, r](const Polytope<S>&) { return SymTensor<S>(n, r); }};
}

/// Lebesgue measure inside the subspace spanned by orthonormal columns of `basis`.
template <class S>
Valuation<S> intrinsic_volume_in(const RMatrix<S>& basis) {
  const int n = static_cast<int>(basis.rows());
  return {"volume_in_subspace", 0, n, Parity::even, TranslationBehavior::invariant,
          [n, basis](const Polytope<S>& k) { return SymTensor<S>::scalar(n, subspace_volume(k, basis)); }};
}

template <class S>
Valuation<S> operator+(const Valuation<S>& a, const Valuation<S>& b) {
  if (a.rank != b.rank || a.dim != b.dim) throw DimensionError("valuation sum: rank or dimension mismatch");
  return {a.name + "+" + b.name, a.rank, a.dim, a.parity == b.parity ? a.parity : Parity::none,
          a.translation == b.translation ? a.translation : TranslationBehavior::none,
          [a, b](const Polytope<S>& k) { return a(k) + b(k); }};
}

template <class S>
Valuation<S> operator*(const S& c, const Valuation<S>& a) {
  return {"c*" + a.name, a.rank, a.dim, a.parity, a.translation,
          [c, a](const Polytope<S>& k) { return a(k) * c; }};
}

/// Z^+ (sign = +1) or Z^- (sign = -1): (Z(K) +- Z(-K)) / 2.
template <class S>
Valuation<S> parity_part(const Valuation<S>& z, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("parity_part: sign must be +1 or -1");
  return {z.name + (sign > 0 ? "^+" : "^-"), z.rank, z.dim, sign > 0 ? Parity::even : Parity::odd,
          z.translation, [z, sign](const Polytope<S>& k) {
            const SymTensor<S> reflected = z(scale(k, S(-1)));
            SymTensor<S> out = sign > 0 ? z(k) + reflected : z(k) - reflected;
            return out * (S(1) / S(2));
          }};
}

// McMullen decomposition ------------------------------------------------------

/// Homogeneous components Z_0..Z_D of Z(lambda K) = sum_j lambda^j Z_j(K), D = n + rank,
/// from the exact Vandermonde solve at lambda = 1..D+1. `max_degree` overrides D.
template <class S>
std::vector<SymTensor<S>> mcmullen_decompose(const Valuation<S>& z, const Polytope<S>& body, int max_degree = -1) {
  if (body.dim() != z.dim) throw DimensionError("mcmullen_decompose: evaluator dimension mismatch");
  const int degree = max_degree >= 0 ? max_degree : z.dim + z.rank;
  const int nodes = degree + 1;
  RMatrix<S> vandermonde(nodes, nodes);
  std::vector<SymTensor<S>> values;
  for (int k = 0; k < nodes; ++k) {
    const S lambda(k + 1);
    for (int j = 0; j < nodes; ++j) vandermonde(k, j) = power(lambda, j);
    values.push_back(z(scale(body, lambda)));
  }
  const RMatrix<S> inv = inverse<S>(vandermonde);
  std::vector<SymTensor<S>> components;
  for (int j = 0; j < nodes; ++j) {
    SymTensor<S> c(z.dim, z.rank);
    for (int k = 0; k < nodes; ++k) c += values[static_cast<std::size_t>(k)] * inv(j, k);
    components.push_back(std::move(c));
  }
  return components;
}

/// Residual of Z_j(lambda K) = lambda^j Z_j(K) at the given lambda, and of sum_j Z_j(K) = Z(K).
template <class S>
S homogeneity_residual(const Valuation<S>& z, const Polytope<S>& body, const S& lambda,
                       const std::vector<SymTensor<S>>& components) {
  const Polytope<S> scaled = scale(body, lambda);
  S worst(0);
  SymTensor<S> sum(z.dim, z.rank), scaled_sum(z.dim, z.rank);
  for (std::size_t j = 0; j < components.size(); ++j) {
    sum += components[j];
    scaled_sum += components[j] * power(lambda, static_cast<int>(j));
  }
  worst = std::max(worst, max_abs_diff(sum, z(body)));
  worst = std::max(worst, max_abs_diff(scaled_sum, z(scaled)));
  const auto rescaled = mcmullen_decompose(z, scaled, static_cast<int>(components.size()) - 1);
  for (std::size_t j = 0; j < components.size(); ++j)
    worst = std::max(worst, max_abs_diff(rescaled[j], components[j] * power(lambda, static_cast<int>(j))));
  return worst;
}

// Klain function --------------------------------------------------------------

/// Z(probe) / V_j(probe) for the unit cube and the standard simplex spanned by L's basis.
template <class S>
KlainValue<S> klain(const Valuation<S>& z, int j, const Subspace<S>& l) {
  if (l.dim() != j) throw DimensionError("klain: subspace dimension differs from j");
  if (l.ambient_dim() != z.dim) throw DimensionError("klain: subspace ambient dimension mismatch");
  const Polytope<S> cube = linear_image<S>(l.basis, unit_cube<S>(j));
  const Polytope<S> tip = linear_image<S>(l.basis, standard_simplex<S>(j));
  const S cube_vol = subspace_volume(cube, l.basis);
  const S tip_vol = subspace_volume(tip, l.basis);
  if (is_zero(cube_vol) || is_zero(tip_vol)) throw GeometryError("klain: probe has zero j-volume");
  SymTensor<S> from_cube = z(cube) * (S(1) / cube_vol);
  SymTensor<S> from_tip = z(tip) * (S(1) / tip_vol);
  KlainValue<S> out{l, from_cube, j, max_abs_diff(from_cube, from_tip)};
  return out;
}

// Translation covariance --------------------------------------------------------

/// Checks Z^{r-i}(K+y) = sum_l Z^{r-i-l}(K) (.) y^l / l! for every tail of the list Z^r..Z^0.
template <class S>
Report verify_covariance(const std::vector<Valuation<S>>& zs, const Polytope<S>& body,
                         const std::vector<Vector<S>>& ys, double tol = 1e-9) {
  if (zs.empty()) throw DimensionError("verify_covariance: empty valuation list");
  const int r = zs.front().rank;
  for (int i = 0; i <= r; ++i) {
    if (static_cast<int>(zs.size()) != r + 1 || zs[static_cast<std::size_t>(i)].rank != r - i)
      throw DimensionError("verify_covariance: ranks must descend r, r-1, ..., 0");
  }
  std::vector<SymTensor<S>> at_body;
  for (const auto& z : zs) at_body.push_back(z(body));
  Report report{"covariance", {}, {}, true};
  S worst(0);
  for (std::size_t w = 0; w < ys.size(); ++w) {
    const Vector<S>& y = ys[w];
    const Polytope<S> moved = translate(body, y);
    std::vector<SymTensor<S>> powers;
    for (int l = 0; l <= r; ++l)
      powers.push_back(vector_power(y, l) * (S(1) / detail::rational_scalar<S>(factorial(l))));
    for (int i = 0; i <= r; ++i) {
      SymTensor<S> expansion(body.dim(), r - i);
      for (int l = 0; l <= r - i; ++l)
        expansion += sym_product(at_body[static_cast<std::size_t>(i + l)], powers[static_cast<std::size_t>(l)]);
      const S res = max_abs_diff(zs[static_cast<std::size_t>(i)](moved), expansion);
      if (res > worst) {
        worst = res;
        report.witnesses = {"y#" + std::to_string(w) + " rank " + std::to_string(r - i)};
      }
    }
  }
  report.max_residual = detail::residual_variant(worst);
  report.pass = detail::residual_ok(worst, tol);
  return report;
}

// Equivariance ----------------------------------------------------------------

/// Residual Z(phi K) - phi . Z(K) for each sample; exact zero expected for M^r under SL.
template <class S>
Report verify_equivariance(const Valuation<S>& z, const std::vector<RMatrix<S>>& samples, const Polytope<S>& body,
                           double tol = 1e-9) {
  Report report{"equivariance", {}, {}, true};
  const SymTensor<S> base = z(body);
  S worst(0);
  for (std::size_t w = 0; w < samples.size(); ++w) {
    const RMatrix<S>& phi = samples[w];
    if (phi.rows() != z.dim || phi.cols() != z.dim) throw DimensionError("verify_equivariance: sample size mismatch");
    if (is_zero(determinant<S>(phi), 0.0)) throw NumericError("verify_equivariance: non-invertible sample");
    const S res = max_abs_diff(z(linear_image(phi, body)), gl_action(phi, base));
    if (res > worst) {
      worst = res;
      report.witnesses = {"sample#" + std::to_string(w)};
    }
  }
  report.max_residual = detail::residual_variant(worst);
  report.pass = detail::residual_ok(worst, tol);
  return report;
}

template <class S>
Report verify_equivariance(const Valuation<S>& z, const std::vector<CMatrix<S>>& samples, const Polytope<S>& body,
                           double tol = 1e-9) {
  std::vector<RMatrix<S>> real;
  for (const auto& a : samples) real.push_back(realify(a));
  return verify_equivariance(z, real, body, tol);
}

// Scaling relation --------------------------------------------------------------

/// Z_j(psi K) = |det_C psi|^{j/m} Z_j(K), with Z_j from the McMullen decomposition.
/// Exact mode throws NumericError when the factor is irrational.
template <class S>
Report scaling_relation_check(const Valuation<S>& z, int j, const CMatrix<S>& psi, const Polytope<S>& body,
                              double tol = 1e-9) {
  const int m = psi.size();
  if (z.dim != 2 * m) throw DimensionError("scaling_relation_check: valuation must live on R^{2m}");
  const S det_r = det_c(psi).norm_sq();  // |det_C psi|^2
  S factor;
  if constexpr (is_exact_v<S>) {
    auto root = rational_power(det_r, j, 2 * m);
    if (!root) throw NumericError("scaling_relation_check: factor |det_C|^(j/m) is irrational; use float mode");
    factor = *root;
  } else {
    factor = std::pow(det_r, static_cast<double>(j) / (2.0 * m));
  }
  const auto before = mcmullen_decompose(z, body);
  const auto after = mcmullen_decompose(z, linear_image(realify(psi), body));
  if (j < 0 || j >= static_cast<int>(before.size())) throw DimensionError("scaling_relation_check: degree out of range");
  const S res = max_abs_diff(after[static_cast<std::size_t>(j)], before[static_cast<std::size_t>(j)] * factor);
  Report report{"scaling", {"j=" + std::to_string(j)}, detail::residual_variant(res), detail::residual_ok(res, tol)};
  return report;
}

// Surface area pairing ------------------------------------------------------------

using SurfaceFunction = std::function<SymTensor<double>(const Vector<double>&)>;

/// sum_i f(u_i) w_i over the atoms of the surface area measure (unit normals as floats).
template <class S>
SymTensor<double> surface_pairing(const SurfaceFunction& f, const Polytope<S>& p) {
  const auto atoms = surface_area_measure(p);
  SymTensor<double> total;
  bool first = true;
  for (const auto& atom : atoms) {
    SymTensor<double> value = f(atom.unit_normal()) * atom.measure();
    if (first) {
      total = value;
      first = false;
    } else {
      total += value;
    }
  }
  if (first) throw GeometryError("surface_pairing: empty surface area measure");
  return total;
}

/// Exact pairing for a 1-homogeneous f: f(w_i u_i) = f(area vector), no square roots.
template <class S>
SymTensor<S> surface_pairing_homogeneous(const std::function<SymTensor<S>(const Vector<S>&)>& f, const Polytope<S>& p) {
  const auto atoms = surface_area_measure(p);
  if (atoms.empty()) throw GeometryError("surface_pairing: empty surface area measure");
  SymTensor<S> total = f(atoms.front().normal);
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (atoms[i].normal_norm_sq != atoms[i].measure_sq)
      throw GeometryError("exact pairing needs area-vector facets");
    total += f(atoms[i].normal);
  }
  return total;
}

/// h_C as a 1-homogeneous surface function.
template <class S>
SurfaceFunction support_function(const Polytope<S>& c) {
  const Polytope<double> cd = cast_polytope<double>(c);
  return [cd](const Vector<double>& u) { return SymTensor<double>::scalar(static_cast<int>(u.size()), support(cd, u)); };
}

template <class S>
std::function<SymTensor<S>(const Vector<S>&)> support_function_exact(const Polytope<S>& c) {
  return [c](const Vector<S>& u) { return SymTensor<S>::scalar(static_cast<int>(u.size()), support(c, u)); };
}

/// Checks int f dS_{phi P} = int f o phi^{-t} dS_P for det phi = +-1.
template <class S>
Report transfer_check(const SurfaceFunction& f, const RMatrix<S>& phi, const Polytope<S>& p, double tol = 1e-10,
                      bool use_inverse_transpose = true) {
  const S det = determinant<S>(phi);
  if (!is_zero(S(abs_value(det) - S(1)), 1e-12)) throw NumericError("transfer_check: det phi must be +-1");
  const RMatrix<double> phid = cast_matrix<double>(phi);
  const RMatrix<double> pullback = use_inverse_transpose ? RMatrix<double>(inverse<double>(phid).transpose())
                                                         : RMatrix<double>(inverse<double>(phid));
  const SymTensor<double> lhs = surface_pairing(f, linear_image(phi, p));
  const SymTensor<double> rhs =
      surface_pairing([&](const Vector<double>& u) { return f(Vector<double>(pullback * u)); }, p);
  const double res = max_abs_diff(lhs, rhs);
  return Report{"transfer", {}, res, res <= tol};
}

}  // namespace valuta
