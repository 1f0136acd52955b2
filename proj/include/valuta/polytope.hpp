#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "valuta/linalg.hpp"
#include "valuta/rational.hpp"
#include "valuta/subspace.hpp"

namespace valuta {

/// One atom (u, w) of the surface area measure.
///
/// `normal` is an outward direction, not necessarily unit. For facets computed
/// from geometry it is the facet's area vector, so |normal|^2 == measure_sq and
/// everything stays exact; unit normals are only produced as floats.
template <class S>
struct FacetDatum {
  Vector<S> normal;
  S normal_norm_sq;
  S measure_sq;

  double measure() const { return std::sqrt(to_double(measure_sq)); }
  Vector<double> unit_normal() const {
    return cast_vector<double>(normal) / std::sqrt(to_double(normal_norm_sq));
  }
  /// measure * unit normal, exact when normal is an area vector.
  Vector<double> weighted_normal() const { return unit_normal() * measure(); }
};

using Cell = std::vector<int>;

/// Convex polytope in R^n with exact (or float) vertices.
///
/// Cells triangulate the polytope (interior-disjoint simplices of the affine
/// dimension); facet cells triangulate each facet by (n-1)-simplices. Both are
/// index structures over `vertices` and survive affine maps unchanged.
template <class S>
class Polytope {
 public:
  Polytope() = default;
  Polytope(int dim, std::vector<Vector<S>> vertices) : dim_(dim), vertices_(std::move(vertices)) {
    if (dim < 1) throw DimensionError("polytope dimension must be positive");
    if (vertices_.empty()) throw GeometryError("polytope needs at least one vertex");
    for (const auto& v : vertices_)
      if (v.size() != dim) throw DimensionError("vertex dimension mismatch");
  }

  int dim() const { return dim_; }
  const std::vector<Vector<S>>& vertices() const { return vertices_; }
  const Vector<S>& vertex(int i) const { return vertices_.at(static_cast<std::size_t>(i)); }

  bool has_triangulation() const { return cells_.has_value(); }
  const std::vector<Cell>& cells() const {
    if (!cells_) throw GeometryError("polytope has no triangulation");
    return *cells_;
  }
  void set_cells(std::vector<Cell> cells) {
    check_cells(cells);
    cells_ = std::move(cells);
  }

  bool has_facet_cells() const { return facet_cells_.has_value(); }
  const std::vector<std::vector<Cell>>& facet_cells() const { return *facet_cells_; }
  void set_facet_cells(std::vector<std::vector<Cell>> facets) {
    for (const auto& f : facets) check_cells(f);
    facet_cells_ = std::move(facets);
  }

  bool has_imported_facets() const { return imported_facets_.has_value(); }
  const std::vector<FacetDatum<S>>& imported_facets() const { return *imported_facets_; }
  void set_imported_facets(std::vector<FacetDatum<S>> facets) { imported_facets_ = std::move(facets); }

  /// Name of the generator family ("simplex", "box", ...), kept across affine maps.
  const std::string& family() const { return family_; }
  void set_family(std::string f) { family_ = std::move(f); }

  Vector<S> centroid_of_vertices() const {
    Vector<S> c = Vector<S>::Zero(dim_);
    for (const auto& v : vertices_) c += v;
    return c / S(static_cast<long>(vertices_.size()));
  }

  template <class F>
  Polytope map_vertices(int new_dim, F&& f) const {
    std::vector<Vector<S>> mapped;
    mapped.reserve(vertices_.size());
    for (const auto& v : vertices_) mapped.push_back(f(v));
    Polytope out(new_dim, std::move(mapped));
    out.cells_ = cells_;
    out.family_ = family_;
    return out;
  }

 private:
  void check_cells(const std::vector<Cell>& cells) const {
    for (const auto& c : cells)
      for (int i : c)
        if (i < 0 || i >= static_cast<int>(vertices_.size()))
          throw GeometryError("cell references vertex " + std::to_string(i) + " out of range");
  }

  int dim_ = 1;
  std::vector<Vector<S>> vertices_;
  std::optional<std::vector<Cell>> cells_;
  std::optional<std::vector<std::vector<Cell>>> facet_cells_;
  std::optional<std::vector<FacetDatum<S>>> imported_facets_;
  std::string family_ = "general";
};

using PolytopeQ = Polytope<Rational>;

namespace detail {

template <class S>
RMatrix<S> edge_matrix(const std::vector<Vector<S>>& pts, const Cell& cell) {
  const Vector<S>& base = pts[static_cast<std::size_t>(cell[0])];
  RMatrix<S> a(base.size(), static_cast<Eigen::Index>(cell.size()) - 1);
  for (std::size_t k = 1; k < cell.size(); ++k)
    a.col(static_cast<Eigen::Index>(k) - 1) = pts[static_cast<std::size_t>(cell[k])] - base;
  return a;
}

/// Vector N with <N, x> = det[W | x] for the n x (n-1) matrix W.
template <class S>
Vector<S> generalized_cross(const RMatrix<S>& w) {
  const Eigen::Index n = w.rows();
  Vector<S> normal(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    RMatrix<S> minor(n - 1, n - 1);
    for (Eigen::Index i = 0, r = 0; i < n; ++i) {
      if (i == k) continue;
      minor.row(r++) = w.row(i);
    }
    S d = n == 1 ? S(1) : determinant<S>(minor);
    normal(k) = ((k + n - 1) % 2 == 0) ? d : S(-d);
  }
  return normal;
}

/// Kuhn triangulation of the cube spanned by `axes` at `base_mask`; vertex ids are bit masks.
inline std::vector<Cell> kuhn_cells(const std::vector<int>& axes, int base_mask) {
  std::vector<int> perm = axes;
  std::sort(perm.begin(), perm.end());
  std::vector<Cell> cells;
  do {
    Cell c{base_mask};
    int mask = base_mask;
    for (int a : perm) {
      mask |= (1 << a);
      c.push_back(mask);
    }
    cells.push_back(std::move(c));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return cells;
}

}  // namespace detail

template <class S, class F>
Polytope<S> affine_map_keep_facets(const Polytope<S>& p, int new_dim, F&& f) {
  Polytope<S> out = p.map_vertices(new_dim, std::forward<F>(f));
  if (new_dim == p.dim() && p.has_facet_cells()) out.set_facet_cells(p.facet_cells());
  return out;
}

template <class S>
int affine_dimension(const std::vector<Vector<S>>& pts) {
  if (pts.size() <= 1) return 0;
  RMatrix<S> a(pts.front().size(), static_cast<Eigen::Index>(pts.size()) - 1);
  for (std::size_t k = 1; k < pts.size(); ++k) a.col(static_cast<Eigen::Index>(k) - 1) = pts[k] - pts[0];
  return matrix_rank<S>(a, 1e-12);
}

/// Simplex with the given affinely independent vertices (j + 1 of them, j <= n).
template <class S>
Polytope<S> simplex(std::vector<Vector<S>> verts) {
  if (verts.empty()) throw GeometryError("simplex needs vertices");
  const int n = static_cast<int>(verts.front().size());
  const int count = static_cast<int>(verts.size());
  if (count > n + 1) throw GeometryError("simplex has more than n+1 vertices");
  if (affine_dimension(verts) != count - 1) throw GeometryError("degenerate simplex: vertices affinely dependent");
  Polytope<S> p(n, std::move(verts));
  Cell all(static_cast<std::size_t>(count));
  std::iota(all.begin(), all.end(), 0);
  p.set_cells({all});
  if (count == n + 1) {
    std::vector<std::vector<Cell>> facets;
    for (int i = 0; i < count; ++i) {
      Cell f;
      for (int k = 0; k < count; ++k)
        if (k != i) f.push_back(k);
      facets.push_back({f});
    }
    p.set_facet_cells(std::move(facets));
  }
  p.set_family("simplex");
  return p;
}

/// Standard simplex conv{o, e_1, ..., e_n}.
template <class S>
Polytope<S> standard_simplex(int n) {
  std::vector<Vector<S>> verts{Vector<S>::Zero(n)};
  for (int i = 0; i < n; ++i) verts.push_back(Vector<S>::Unit(n, i));
  return simplex<S>(std::move(verts));
}

/// Axis-parallel box [lo, hi] with a Kuhn triangulation (n! cells).
template <class S>
Polytope<S> box(const Vector<S>& lo, const Vector<S>& hi) {
  const int n = static_cast<int>(lo.size());
  if (hi.size() != n) throw DimensionError("box: corner dimension mismatch");
  if (n > 10) throw DimensionError("box: dimension too large for vertex enumeration");
  for (int i = 0; i < n; ++i)
    if (!(lo(i) < hi(i))) throw GeometryError("box: empty extent in coordinate " + std::to_string(i));
  std::vector<Vector<S>> verts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vector<S> v(n);
    for (int i = 0; i < n; ++i) v(i) = (mask >> i) & 1 ? hi(i) : lo(i);
    verts.push_back(v);
  }
  Polytope<S> p(n, std::move(verts));
  std::vector<int> axes(static_cast<std::size_t>(n));
  std::iota(axes.begin(), axes.end(), 0);
  p.set_cells(detail::kuhn_cells(axes, 0));
  std::vector<std::vector<Cell>> facets;
  for (int i = 0; i < n; ++i) {
    std::vector<int> rest;
    for (int a : axes)
      if (a != i) rest.push_back(a);
    facets.push_back(detail::kuhn_cells(rest, 0));
    facets.push_back(detail::kuhn_cells(rest, 1 << i));
  }
  p.set_facet_cells(std::move(facets));
  p.set_family("box");
  return p;
}

template <class S>
Polytope<S> unit_cube(int n) {
  return box<S>(Vector<S>::Zero(n), Vector<S>::Ones(n));
}

/// Crosspolytope conv{+-v_1, ..., +-v_j}; vertex 2i is +v_i, vertex 2i+1 is -v_i.
///
/// Triangulated by splitting along the diagonal [v_1, -v_1]: 2^(j-1) cells
/// conv{v_1, -v_1, eps_2 v_2, ..., eps_j v_j}.
template <class S>
Polytope<S> crosspolytope(const std::vector<Vector<S>>& vecs) {
  if (vecs.empty()) throw GeometryError("crosspolytope needs at least one vector");
  const int n = static_cast<int>(vecs.front().size());
  const int j = static_cast<int>(vecs.size());
  RMatrix<S> m(n, j);
  for (int i = 0; i < j; ++i) {
    if (vecs[static_cast<std::size_t>(i)].size() != n) throw DimensionError("crosspolytope: vector dimension mismatch");
    m.col(i) = vecs[static_cast<std::size_t>(i)];
  }
  if (matrix_rank<S>(m) != j) throw GeometryError("crosspolytope: vectors are linearly dependent");
  std::vector<Vector<S>> verts;
  for (const auto& v : vecs) {
    verts.push_back(v);
    verts.push_back(-v);
  }
  Polytope<S> p(n, std::move(verts));
  std::vector<Cell> cells;
  for (int signs = 0; signs < (1 << (j - 1)); ++signs) {
    Cell c{0, 1};
    for (int i = 1; i < j; ++i) c.push_back(2 * i + ((signs >> (i - 1)) & 1));
    cells.push_back(std::move(c));
  }
  p.set_cells(std::move(cells));
  if (j == n) {
    std::vector<std::vector<Cell>> facets;
    for (int signs = 0; signs < (1 << j); ++signs) {
      Cell f;
      for (int i = 0; i < j; ++i) f.push_back(2 * i + ((signs >> i) & 1));
      facets.push_back({f});
    }
    p.set_facet_cells(std::move(facets));
  }
  p.set_family("crosspolytope");
  return p;
}

/// Convex hull of planar points (exact orientation tests), counter-clockwise, no collinear points.
template <class S>
std::vector<Vector<S>> convex_hull_2d(std::vector<Vector<S>> pts) {
  auto less = [](const Vector<S>& a, const Vector<S>& b) { return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1)); };
  std::sort(pts.begin(), pts.end(), less);
  pts.erase(std::unique(pts.begin(), pts.end(), [](const Vector<S>& a, const Vector<S>& b) { return a == b; }),
            pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const Vector<S>& o, const Vector<S>& a, const Vector<S>& b) {
    return S((a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0)));
  };
  std::vector<Vector<S>> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && !(cross(hull[k - 2], hull[k - 1], pts[i]) > S(0))) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && !(cross(hull[k - 2], hull[k - 1], pts[i]) > S(0))) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

/// Convex polygon from its vertices in counter-clockwise order: fan triangulation, edges as facets.
template <class S>
Polytope<S> polygon(std::vector<Vector<S>> ccw) {
  const int count = static_cast<int>(ccw.size());
  if (count < 3) throw GeometryError("polygon needs at least three vertices");
  for (int i = 0; i < count; ++i) {
    const auto& a = ccw[static_cast<std::size_t>(i)];
    const auto& b = ccw[static_cast<std::size_t>((i + 1) % count)];
    const auto& c = ccw[static_cast<std::size_t>((i + 2) % count)];
    if (a.size() != 2) throw DimensionError("polygon vertices must be planar");
    const S turn = (b(0) - a(0)) * (c(1) - b(1)) - (b(1) - a(1)) * (c(0) - b(0));
    if (!(turn > S(0))) throw GeometryError("polygon vertices are not strictly convex counter-clockwise");
  }
  Polytope<S> p(2, std::move(ccw));
  std::vector<Cell> cells;
  for (int i = 1; i + 1 < count; ++i) cells.push_back({0, i, i + 1});
  p.set_cells(std::move(cells));
  std::vector<std::vector<Cell>> facets;
  for (int i = 0; i < count; ++i) facets.push_back({{i, (i + 1) % count}});
  p.set_facet_cells(std::move(facets));
  p.set_family("polygon");
  return p;
}

/// Minkowski sum of two planar polytopes (hull of pairwise vertex sums).
template <class S>
Polytope<S> minkowski_sum_2d(const Polytope<S>& a, const Polytope<S>& b) {
  if (a.dim() != 2 || b.dim() != 2) throw DimensionError("minkowski_sum_2d needs planar polytopes");
  std::vector<Vector<S>> sums;
  for (const auto& u : a.vertices())
    for (const auto& v : b.vertices()) sums.push_back(u + v);
  return polygon<S>(convex_hull_2d<S>(std::move(sums)));
}

/// Sum of |det| / n! over full-dimensional cells; lower-dimensional polytopes have volume 0.
template <class S>
S volume(const Polytope<S>& p) {
  const int n = p.dim();
  S total(0);
  for (const auto& cell : p.cells()) {
    if (static_cast<int>(cell.size()) != n + 1) continue;
    total += abs_value(determinant<S>(detail::edge_matrix(p.vertices(), cell)));
  }
  if constexpr (is_exact_v<S>)
    return total / factorial(n);
  else
    return total / to_double(factorial(n));
}

template <class S>
Polytope<S> translate(const Polytope<S>& p, const Vector<S>& y) {
  if (y.size() != p.dim()) throw DimensionError("translate: dimension mismatch");
  return affine_map_keep_facets(p, p.dim(), [&](const Vector<S>& v) { return Vector<S>(v + y); });
}

/// Image under a linear map phi (rows = new ambient dimension). Facet structure is kept for
/// invertible square maps; imported facet data is dropped.
template <class S>
Polytope<S> linear_image(const RMatrix<S>& phi, const Polytope<S>& p) {
  if (phi.cols() != p.dim()) throw DimensionError("linear_image: dimension mismatch");
  const int rows = static_cast<int>(phi.rows());
  if (rows == p.dim() && determinant<S>(phi) != S(0))
    return affine_map_keep_facets(p, rows, [&](const Vector<S>& v) { return Vector<S>(phi * v); });
  return p.map_vertices(rows, [&](const Vector<S>& v) { return Vector<S>(phi * v); });
}

template <class S>
Polytope<S> scale(const Polytope<S>& p, const S& lambda) {
  return linear_image<S>(RMatrix<S>::Identity(p.dim(), p.dim()) * lambda, p);
}

/// h_P(u) = max over vertices of <u, v>.
template <class S>
S support(const Polytope<S>& p, const Vector<S>& u) {
  if (u.size() != p.dim()) throw DimensionError("support: dimension mismatch");
  S best = u.dot(p.vertex(0));
  for (const auto& v : p.vertices()) best = std::max(best, S(u.dot(v)));
  return best;
}

/// Surface area measure as atoms at outward facet normals weighted by facet (n-1)-volume.
template <class S>
std::vector<FacetDatum<S>> surface_area_measure(const Polytope<S>& p) {
  if (p.has_imported_facets()) return p.imported_facets();
  if (!p.has_facet_cells())
    throw GeometryError("surface area measure unavailable for a " + p.family() + " polytope without facet data");
  const int n = p.dim();
  const Vector<S> inside = p.centroid_of_vertices();
  S inv_fact = S(1);
  if constexpr (is_exact_v<S>)
    inv_fact /= factorial(n - 1);
  else
    inv_fact /= to_double(factorial(n - 1));
  std::vector<FacetDatum<S>> atoms;
  for (const auto& facet : p.facet_cells()) {
    Vector<S> area = Vector<S>::Zero(n);
    for (const auto& cell : facet) {
      if (static_cast<int>(cell.size()) != n) throw GeometryError("facet cell must have n vertices");
      Vector<S> nc = detail::generalized_cross(detail::edge_matrix(p.vertices(), cell));
      const S side = nc.dot(Vector<S>(p.vertex(cell[0]) - inside));
      if (is_zero(side, 0.0)) continue;
      area += side > S(0) ? nc : Vector<S>(-nc);
    }
    area *= inv_fact;
    const S norm_sq = area.squaredNorm();
    if (is_zero(norm_sq, 0.0)) throw GeometryError("degenerate facet with zero measure");
    atoms.push_back(FacetDatum<S>{area, norm_sq, norm_sq});
  }
  return atoms;
}

/// j-volume of a polytope lying in the span of the orthonormal columns of `basis`.
template <class S>
S subspace_volume(const Polytope<S>& p, const RMatrix<S>& basis, double tol = 1e-10) {
  if (basis.rows() != p.dim()) throw DimensionError("subspace_volume: dimension mismatch");
  const int j = static_cast<int>(basis.cols());
  std::vector<Vector<S>> coords;
  for (const auto& v : p.vertices()) {
    Vector<S> c = basis.transpose() * v;
    const Vector<S> residual = basis * c - v;
    for (Eigen::Index i = 0; i < residual.size(); ++i)
      if (!is_zero(S(residual(i)), tol)) throw GeometryError("polytope is not contained in the subspace");
    coords.push_back(std::move(c));
  }
  S total(0);
  for (const auto& cell : p.cells()) {
    if (static_cast<int>(cell.size()) != j + 1) continue;
    total += abs_value(determinant<S>(detail::edge_matrix(coords, cell)));
  }
  if constexpr (is_exact_v<S>)
    return total / factorial(j);
  else
    return total / to_double(factorial(j));
}

template <class S>
S subspace_volume(const Polytope<S>& p, const Subspace<S>& l, double tol = 1e-10) {
  return subspace_volume(p, l.basis, tol);
}

template <class To, class From>
Polytope<To> cast_polytope(const Polytope<From>& p) {
  std::vector<Vector<To>> verts;
  for (const auto& v : p.vertices()) verts.push_back(cast_vector<To>(v));
  Polytope<To> out(p.dim(), std::move(verts));
  if (p.has_triangulation()) out.set_cells(p.cells());
  if (p.has_facet_cells()) out.set_facet_cells(p.facet_cells());
  out.set_family(p.family());
  return out;
}

}  // namespace valuta
