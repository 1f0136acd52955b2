#include "valuta/invariants.hpp"

#include <map>

#include "valuta/complex.hpp"

namespace valuta {

std::string to_string(AlgebraKind kind) {
  return kind == AlgebraKind::sl_m_R_diagonal ? "sl_m_R_diag" : "sl_m_C";
}

AlgebraKind parse_algebra_kind(const std::string& name) {
  if (name == "sl_m_R_diag" || name == "sl_m_R_diagonal") return AlgebraKind::sl_m_R_diagonal;
  if (name == "sl_m_C" || name == "sl_m_C_realified") return AlgebraKind::sl_m_C_realified;
  throw ParseError("unknown algebra kind '" + name + "'");
}

AlgebraSpec make_algebra(AlgebraKind kind, int m) {
  if (m < 2) throw std::invalid_argument("make_algebra needs m >= 2");
  AlgebraSpec spec{kind, m, 2 * m, {}};

  std::vector<MatrixQ> sl_basis;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      if (p == q) continue;
      MatrixQ e = MatrixQ::Zero(m, m);
      e(p, q) = 1;
      sl_basis.push_back(e);
    }
  for (int l = 0; l + 1 < m; ++l) {
    MatrixQ h = MatrixQ::Zero(m, m);
    h(l, l) = 1;
    h(l + 1, l + 1) = -1;
    sl_basis.push_back(h);
  }

  for (const auto& x : sl_basis) {
    if (kind == AlgebraKind::sl_m_R_diagonal) {
      MatrixQ g = MatrixQ::Zero(2 * m, 2 * m);
      g.topLeftCorner(m, m) = x;
      g.bottomRightCorner(m, m) = x;
      spec.generators.push_back(g);
    } else {
      spec.generators.push_back(realify(CMatrixQ(x, MatrixQ::Zero(m, m))));
      spec.generators.push_back(realify(CMatrixQ(MatrixQ::Zero(m, m), x)));
    }
  }
  return spec;
}

MatrixQ derivation_matrix(const MatrixQ& x, int n, int r) {
  if (x.rows() != n || x.cols() != n) throw DimensionError("derivation_matrix: X must be n x n");
  const auto basis = enumerate_multi_indices(n, r);
  std::map<MultiIndex, Eigen::Index> position;
  for (std::size_t k = 0; k < basis.size(); ++k) position[basis[k]] = static_cast<Eigen::Index>(k);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  MatrixQ d = MatrixQ::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const MultiIndex& alpha = basis[static_cast<std::size_t>(col)];
    for (int i = 0; i < n; ++i) {
      if (alpha[i] == 0) continue;
      MultiIndex lowered = alpha;
      lowered.decrement(i);
      for (int l = 0; l < n; ++l) {
        if (x(l, i) == 0) continue;
        MultiIndex raised = lowered;
        raised.increment(l);
        d(position.at(raised), col) += Rational(alpha[i]) * x(l, i);
      }
    }
  }
  return d;
}

VectorQ to_coordinates(const SymTensorQ& t) {
  const auto basis = enumerate_multi_indices(t.dim(), t.rank());
  VectorQ c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) c(static_cast<Eigen::Index>(k)) = t.coeff(basis[k]);
  return c;
}

SymTensorQ from_coordinates(const VectorQ& c, int n, int r) {
  const auto basis = enumerate_multi_indices(n, r);
  if (c.size() != static_cast<Eigen::Index>(basis.size())) throw DimensionError("from_coordinates: length mismatch");
  SymTensorQ t(n, r);
  for (std::size_t k = 0; k < basis.size(); ++k) t.add(basis[k], c(static_cast<Eigen::Index>(k)));
  return t;
}

std::vector<SymTensorQ> invariant_subspace(const AlgebraSpec& spec, int r) {
  if (r < 0) throw DimensionError("invariant_subspace: negative rank");
  const auto dim = static_cast<Eigen::Index>(tensor_dim(spec.n, r));
  // Intersect kernels one generator at a time; the running basis only shrinks.
  MatrixQ kernel = MatrixQ::Identity(dim, dim);
  for (const auto& x : spec.generators) {
    if (kernel.cols() == 0) break;
    const MatrixQ restricted = derivation_matrix(x, spec.n, r) * kernel;
    kernel = MatrixQ(kernel * nullspace<Rational>(restricted));
  }
  // Canonical form: reduced column echelon, so results do not depend on generator order.
  if (kernel.cols() > 0) {
    MatrixQ t = kernel.transpose();
    const auto pivots = rref<Rational>(t);
    kernel = t.topRows(static_cast<Eigen::Index>(pivots.size())).transpose();
  }
  std::vector<SymTensorQ> out;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) out.push_back(from_coordinates(kernel.col(c), spec.n, r));
  return out;
}

WeightConstraintResult enumerate_admissible_weights(int m, int j, int r) {
  if (m < 2) throw std::invalid_argument("enumerate_admissible_weights needs m >= 2");
  if (j < 1 || j > 2 * m - 1) throw std::invalid_argument("enumerate_admissible_weights needs 1 <= j <= 2m-1");
  if (j == m) throw std::invalid_argument("enumerate_admissible_weights: j = m carries no weight constraint");
  if (r < 0) throw std::invalid_argument("enumerate_admissible_weights: negative rank");
  const int shift = j < m ? j : j - m;

  WeightConstraintResult result{m, j, r, {}, std::nullopt};
  for_each_multi_index(2 * m, r, [&](const MultiIndex& theta) {
    const int s = theta[m - 1] + theta[2 * m - 1];
    for (int l = 0; l < m; ++l) {
      const int want = l < shift ? s + 1 : s;
      if (theta[l] + theta[m + l] != want) return;
    }
    result.weights.push_back(theta);
    result.s = s;
  });
  return result;
}

MatrixQ sign_map(int m) {
  if (m < 2) throw std::invalid_argument("sign_map needs m >= 2");
  CMatrixQ psi = CMatrixQ::identity(m);
  psi.set(0, 0, ComplexQ(-1));
  psi.set(m - 1, m - 1, ComplexQ(-1));
  return realify(psi);
}

bool parity_killer_check(const std::vector<SymTensorQ>& basis, int m, int j) {
  if (j < 1 || j > 2 * m - 1) throw std::invalid_argument("parity_killer_check needs 1 <= j <= 2m-1");
  const MatrixQ psi = sign_map(m);
  for (const auto& t : basis) {
    if (t.dim() != 2 * m) throw DimensionError("parity_killer_check: tensor must live on R^{2m}");
    if (!(gl_action(psi, t) == -t)) return false;
  }
  return true;
}

}  // namespace valuta
