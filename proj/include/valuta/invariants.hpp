#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valuta/linalg.hpp"
#include "valuta/multi_index.hpp"
#include "valuta/sym_tensor.hpp"

namespace valuta {

enum class AlgebraKind {
  sl_m_R_diagonal,   ///< sl(m,R) acting by X (+) X on R^m (+) R^m
  sl_m_C_realified,  ///< realified sl(m,C) on R^{2m}
};

std::string to_string(AlgebraKind kind);
AlgebraKind parse_algebra_kind(const std::string& name);

/// Real basis of a Lie algebra in its representation on R^n, n = 2m.
struct AlgebraSpec {
  AlgebraKind kind = AlgebraKind::sl_m_R_diagonal;
  int m = 2;
  int n = 4;
  std::vector<MatrixQ> generators;
};

/// Standard generators: E_pq (p != q) and H_l = E_ll - E_{l+1,l+1}, plus their i-multiples for
/// the complex kind, mapped into gl(2m, R).
AlgebraSpec make_algebra(AlgebraKind kind, int m);

/// Matrix of the derivation e^alpha -> sum_i alpha(i) e^{alpha - e_i} (.) X e_i on T^r(R^n),
/// in the basis enumerate_multi_indices(n, r).
MatrixQ derivation_matrix(const MatrixQ& x, int n, int r);

/// Coordinates of t in the basis enumerate_multi_indices(t.dim(), t.rank()) and back.
VectorQ to_coordinates(const SymTensorQ& t);
SymTensorQ from_coordinates(const VectorQ& c, int n, int r);

/// Basis of the subspace of T^r annihilated by every generator (exact nullspace).
std::vector<SymTensorQ> invariant_subspace(const AlgebraSpec& spec, int r);

struct WeightConstraintResult {
  int m = 0;
  int j = 0;
  int r = 0;
  std::vector<MultiIndex> weights;  ///< admissible theta, length 2m, ascending
  std::optional<int> s;             ///< theta(m) + theta(2m), shared by all admissible theta
};

/// All theta in N^{2m} with |theta| = r satisfying
///   theta(l) + theta(m+l) = s + 1 for l = 1..j',  = s for l = j'+1..m,  s = theta(m) + theta(2m),
/// where j' = j for 1 <= j <= m-1 and j' = j - m for m+1 <= j <= 2m-1. Brute force over all theta.
WeightConstraintResult enumerate_admissible_weights(int m, int j, int r);

/// Realification of psi(v_1) = -v_1, psi(v_m) = -v_m, psi(v_l) = v_l otherwise.
MatrixQ sign_map(int m);

/// True iff the sign map negates every tensor in `basis` (so none of them can be invariant).
bool parity_killer_check(const std::vector<SymTensorQ>& basis, int m, int j);

}  // namespace valuta
