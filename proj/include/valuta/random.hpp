#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "valuta/linalg.hpp"
#include "valuta/polytope.hpp"
#include "valuta/rational.hpp"

namespace valuta {

using Rng = std::mt19937_64;

/// Independent generator for a named purpose derived from one 64-bit seed.
Rng named_stream(std::uint64_t seed, std::string_view name);

/// Uniform rational p/q with |p| <= max_num and 1 <= q <= max_den.
Rational random_rational(Rng& rng, int max_num, int max_den);
Rational random_nonzero_rational(Rng& rng, int max_num, int max_den);

VectorQ random_rational_vector(Rng& rng, int n, int max_num, int max_den);

/// Random rational matrix with nonzero determinant.
MatrixQ random_invertible_matrix(Rng& rng, int n, int max_num, int max_den);

/// Random full-dimensional rational simplex in R^n.
PolytopeQ random_simplex(Rng& rng, int n);
/// Random axis-parallel rational box in R^n.
PolytopeQ random_box(Rng& rng, int n);
/// Crosspolytope over random independent rational vectors in R^n.
PolytopeQ random_crosspolytope(Rng& rng, int n);
/// One of the three families above, chosen uniformly.
PolytopeQ random_polytope(Rng& rng, int n);

}  // namespace valuta
