#include <Eigen/Dense>

#include "valuta/complex.hpp"

namespace valuta {

namespace {

constexpr double kRankThreshold = 1e-8;
constexpr double kAmbiguityLow = 1e-10;
constexpr double kAmbiguityHigh = 1e-6;

/// Modified Gram-Schmidt (two passes) in column order; throws on dependent input.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd q(a.rows(), a.cols());
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    Eigen::VectorXd v = a.col(c);
    const double scale = std::max(1.0, v.norm());
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index k = 0; k < c; ++k) v -= q.col(k).dot(v) * q.col(k);
    const double nv = v.norm();
    if (nv <= 1e-10 * scale) throw NumericError("spanning vectors are linearly dependent");
    q.col(c) = v / nv;
  }
  return q;
}

/// Greedy Gram-Schmidt over candidates: prefers input order, skips candidates whose residual
/// is small relative to the best remaining one. When `pair_with_j` is set every accepted
/// vector u also brings J u into the orthonormal set.
std::vector<Eigen::VectorXd> pick_orthonormal(const std::vector<Eigen::VectorXd>& candidates, int wanted,
                                              Eigen::MatrixXd& accepted, const Eigen::MatrixXd* pair_with_j) {
  std::vector<Eigen::VectorXd> picked;
  std::vector<bool> used(candidates.size(), false);
  while (static_cast<int>(picked.size()) < wanted) {
    std::vector<Eigen::VectorXd> residuals;
    double best = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      Eigen::VectorXd v = candidates[i];
      for (int pass = 0; pass < 2; ++pass)
        if (accepted.cols() > 0) v -= accepted * (accepted.transpose() * v);
      residuals.push_back(v);
      if (!used[i]) best = std::max(best, v.norm());
    }
    if (best <= kRankThreshold) throw NumericError("adapted_basis: candidates do not span the target space");
    std::size_t choice = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (!used[i] && residuals[i].norm() >= 0.1 * best) {
        choice = i;
        break;
      }
    }
    used[choice] = true;
    Eigen::VectorXd u = residuals[choice].normalized();
    picked.push_back(u);
    const Eigen::Index extra = pair_with_j ? 2 : 1;
    accepted.conservativeResize(u.size(), accepted.cols() + extra);
    if (pair_with_j) {
      accepted.col(accepted.cols() - 2) = u;
      accepted.col(accepted.cols() - 1) = *pair_with_j * u;
    } else {
      accepted.col(accepted.cols() - 1) = u;
    }
  }
  return picked;
}

}  // namespace

CMatrixQ random_shear_product(Rng& rng, int m, int count) {
  if (m < 2) throw std::invalid_argument("random_shear_product needs m >= 2");
  std::uniform_int_distribution<int> pos(0, m - 1);
  CMatrixQ prod = CMatrixQ::identity(m);
  for (int s = 0; s < count; ++s) {
    int row = pos(rng), col = pos(rng);
    while (col == row) col = pos(rng);
    ComplexQ entry;
    do {
      entry = ComplexQ(random_rational(rng, 2, 2), random_rational(rng, 2, 2));
    } while (entry.is_zero());
    prod = prod * sl_shear<Rational>(m, row, col, entry);
  }
  return prod;
}

CMatrixQ random_complex_matrix(Rng& rng, int m, int max_num, int max_den) {
  CMatrixQ a = CMatrixQ::zero(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      a.set(i, j, ComplexQ(random_rational(rng, max_num, max_den), random_rational(rng, max_num, max_den)));
  return a;
}

CMatrix<double> random_special_unitary(Rng& rng, int m) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd z(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) z(i, j) = {gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const std::complex<double> det = q.determinant();
  q *= std::polar(1.0, -std::arg(det) / m);
  return {q.real(), q.imag()};
}

Subspace<double> make_subspace(const RMatrix<double>& spanning) {
  if (spanning.rows() % 2 != 0) throw DimensionError("subspace ambient dimension must be even");
  Subspace<double> l;
  l.basis = orthonormalize(spanning);
  l.complex_rank = complex_rank<double>(l.basis);
  return l;
}

Subspace<Rational> exact_subspace(const MatrixQ& orthonormal) {
  if (orthonormal.rows() % 2 != 0) throw DimensionError("subspace ambient dimension must be even");
  const MatrixQ gram = orthonormal.transpose() * orthonormal;
  if (gram != MatrixQ::Identity(orthonormal.cols(), orthonormal.cols()))
    throw NumericError("exact subspace basis is not orthonormal");
  Subspace<Rational> l;
  l.basis = orthonormal;
  l.complex_rank = complex_rank<Rational>(orthonormal);
  l.adapted = has_adapted_form(l);
  return l;
}

Subspace<double> adapted_basis(const Subspace<double>& l) {
  const int n = l.ambient_dim();
  const int j = l.dim();
  if (n % 2 != 0) throw DimensionError("adapted_basis: ambient dimension must be even");
  if (j < 1) throw DimensionError("adapted_basis: empty subspace");
  const int m = n / 2;
  const Eigen::MatrixXd b = orthonormality_defect(l.basis) <= 1e-10 ? l.basis : orthonormalize(l.basis);
  const Eigen::MatrixXd jmat = complex_structure<double>(m);
  const Eigen::MatrixXd jb = jmat * b;

  // x = B a lies in JL iff (I - P_JL) B a = 0.
  const Eigen::MatrixXd defect = b - jb * (jb.transpose() * b);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(defect, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  std::vector<Eigen::Index> null_dirs;
  for (Eigen::Index k = 0; k < j; ++k) {
    const double s = k < sigma.size() ? sigma(k) : 0.0;
    if (s >= kAmbiguityLow && s <= kAmbiguityHigh)
      throw NumericError("adapted_basis: ambiguous numerical rank (singular value " + std::to_string(s) + ")");
    if (s < kRankThreshold) null_dirs.push_back(k);
  }
  const int dim_u = static_cast<int>(null_dirs.size());
  if (dim_u % 2 != 0) throw NumericError("adapted_basis: L cap JL has odd real dimension");
  Eigen::MatrixXd u_basis(n, dim_u);
  for (int c = 0; c < dim_u; ++c) u_basis.col(c) = b * svd.matrixV().col(null_dirs[static_cast<std::size_t>(c)]);
  const Eigen::MatrixXd proj_u = u_basis * u_basis.transpose();

  const int k = dim_u / 2;
  const int t = j - dim_u;
  std::vector<Eigen::VectorXd> u_candidates, w_candidates;
  for (int c = 0; c < j; ++c) {
    u_candidates.push_back(proj_u * b.col(c));
    w_candidates.push_back(b.col(c) - proj_u * b.col(c));
  }
  Eigen::MatrixXd accepted(n, 0);
  const auto us = pick_orthonormal(u_candidates, k, accepted, &jmat);
  const auto ws = pick_orthonormal(w_candidates, t, accepted, nullptr);

  Subspace<double> out;
  out.basis.resize(n, j);
  int col = 0;
  for (const auto& u : us) out.basis.col(col++) = u;
  for (const auto& w : ws) out.basis.col(col++) = w;
  for (const auto& u : us) out.basis.col(col++) = jmat * u;
  out.complex_rank = k + t;
  out.adapted = true;
  return out;
}

SampledSubspace sample_subspace(int m, int j, Rng& rng) {
  if (m < 1 || j < 1 || j > 2 * m - 1) throw std::invalid_argument("sample_subspace needs 1 <= j <= 2m-1");
  std::normal_distribution<double> gauss;
  const int wanted = std::min(j, m);
  for (int retries = 0; retries <= 100; ++retries) {
    Eigen::MatrixXd g(2 * m, j);
    for (Eigen::Index r = 0; r < g.rows(); ++r)
      for (Eigen::Index c = 0; c < g.cols(); ++c) g(r, c) = gauss(rng);
    try {
      Subspace<double> l = make_subspace(g);
      if (l.complex_rank == wanted) return {std::move(l), retries};
    } catch (const NumericError&) {
    }
  }
  throw NumericError("sample_subspace: retry bound exceeded; lower-rank set should have measure zero");
}

double orthonormality_defect(const RMatrix<double>& basis) {
  const Eigen::MatrixXd gram = basis.transpose() * basis;
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

double span_residual(const RMatrix<double>& a, const RMatrix<double>& b) {
  const double ab = (a * (a.transpose() * b) - b).cwiseAbs().maxCoeff();
  const double ba = (b * (b.transpose() * a) - a).cwiseAbs().maxCoeff();
  return std::max(ab, ba);
}

}  // namespace valuta
