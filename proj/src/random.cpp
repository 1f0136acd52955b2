#include "valuta/random.hpp"

namespace valuta {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Rng named_stream(std::uint64_t seed, std::string_view name) {
  const std::uint64_t a = splitmix64(seed ^ fnv1a(name));
  const std::uint64_t b = splitmix64(a);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

Rational random_rational(Rng& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  const int p = num(rng);
  const int q = den(rng);
  return rational(p, q);
}

Rational random_nonzero_rational(Rng& rng, int max_num, int max_den) {
  for (;;) {
    Rational q = random_rational(rng, max_num, max_den);
    if (q != 0) return q;
  }
}

VectorQ random_rational_vector(Rng& rng, int n, int max_num, int max_den) {
  VectorQ v(n);
  for (int i = 0; i < n; ++i) v(i) = random_rational(rng, max_num, max_den);
  return v;
}

MatrixQ random_invertible_matrix(Rng& rng, int n, int max_num, int max_den) {
  for (;;) {
    MatrixQ a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = random_rational(rng, max_num, max_den);
    if (determinant<Rational>(a) != 0) return a;
  }
}

PolytopeQ random_simplex(Rng& rng, int n) {
  for (;;) {
    std::vector<VectorQ> verts;
    for (int i = 0; i <= n; ++i) verts.push_back(random_rational_vector(rng, n, 3, 2));
    if (affine_dimension(verts) == n) return simplex<Rational>(std::move(verts));
  }
}

PolytopeQ random_box(Rng& rng, int n) {
  VectorQ lo = random_rational_vector(rng, n, 2, 2);
  VectorQ hi(n);
  for (int i = 0; i < n; ++i) {
    std::uniform_int_distribution<int> width(1, 4);
    hi(i) = lo(i) + rational(width(rng), 2);
  }
  return box<Rational>(lo, hi);
}

PolytopeQ random_crosspolytope(Rng& rng, int n) {
  const MatrixQ m = random_invertible_matrix(rng, n, 2, 2);
  std::vector<VectorQ> vecs;
  for (int i = 0; i < n; ++i) vecs.push_back(m.col(i));
  return crosspolytope<Rational>(vecs);
}

PolytopeQ random_polytope(Rng& rng, int n) {
  std::uniform_int_distribution<int> pick(0, 2);
  switch (pick(rng)) {
    case 0:
      return random_simplex(rng, n);
    case 1:
      return random_box(rng, n);
    default:
      return random_crosspolytope(rng, n);
  }
}

}  // namespace valuta
