#pragma once

#include "valuta/linalg.hpp"

namespace valuta {

/// Real linear subspace of R^{2m} = C^m given by an orthonormal basis (columns).
///
/// When `adapted` is set the basis has the form v_1..v_d, J v_1..J v_{j-d}
/// with d the complex rank.
template <class S>
struct Subspace {
  RMatrix<S> basis;
  int complex_rank = 0;
  bool adapted = false;

  int ambient_dim() const { return static_cast<int>(basis.rows()); }
  int dim() const { return static_cast<int>(basis.cols()); }
};

}  // namespace valuta
