#include <doctest.h>

#include "support.hpp"
#include "valuta/random.hpp"
#include "valuta/sym_tensor.hpp"

using namespace valuta;
using namespace valuta::testing;

namespace {

SymTensorQ random_tensor(Rng& rng, int n, int r) {
  SymTensorQ t(n, r);
  for (const auto& a : enumerate_multi_indices(n, r))
    if (rng() % 2) t.add(a, random_rational(rng, 3, 3));
  return t;
}

}  // namespace

TEST_CASE("multi-index basics") {
  MultiIndex a{1, 0, 2};
  CHECK(a.degree() == 3);
  CHECK(a.key() == "1,0,2");
  CHECK(MultiIndex::from_key("1,0,2") == a);
  CHECK_THROWS(MultiIndex::from_key("1,x"));
  CHECK(multinomial(a) == 3);
  CHECK(multi_factorial(a) == 2);

  const auto all = enumerate_multi_indices(2, 2);
  REQUIRE(all.size() == 3);
  CHECK(all[0] == MultiIndex{0, 2});
  CHECK(all[2] == MultiIndex{2, 0});
}

TEST_CASE("tensor_dim") {
  CHECK(tensor_dim(4, 2) == 10);
  CHECK(tensor_dim(4, 3) == 20);
  CHECK(tensor_dim(7, 0) == 1);
  for (int n = 1; n <= 6; ++n)
    for (int r = 0; r <= 5; ++r)
      CHECK(static_cast<long>(enumerate_multi_indices(n, r).size()) == tensor_dim(n, r));
}

TEST_CASE("sym_product examples") {
  const auto e1 = SymTensorQ::unit(2, 0), e2 = SymTensorQ::unit(2, 1);
  CHECK(sym_product(e1, e1) == tensor(2, 2, {{{2, 0}, "1"}}));
  CHECK(sym_product(e1, e2) == tensor(2, 2, {{{1, 1}, "1"}}));
  CHECK(sym_product(tensor(2, 1, {{{1, 0}, "2"}}), tensor(2, 1, {{{0, 1}, "3"}})) == tensor(2, 2, {{{1, 1}, "6"}}));
  CHECK_THROWS_AS(sym_product(e1, SymTensorQ::unit(3, 0)), DimensionError);
}

TEST_CASE("vector_power examples") {
  CHECK(vector_power(vec({"1", "1"}), 2) == tensor(2, 2, {{{2, 0}, "1"}, {{1, 1}, "2"}, {{0, 2}, "1"}}));
  CHECK(vector_power(vec({"2", "0"}), 3) == tensor(2, 3, {{{3, 0}, "8"}}));
  CHECK(vector_power(vec({"1", "2"}), 2) == tensor(2, 2, {{{2, 0}, "1"}, {{1, 1}, "4"}, {{0, 2}, "4"}}));
  CHECK(vector_power(vec({"5", "7"}), 0) == SymTensorQ::scalar(2, 1));
}

TEST_CASE("gl_action examples") {
  const auto t = tensor(2, 2, {{{1, 1}, "3"}, {{0, 2}, "-1/2"}});
  CHECK(gl_action<Rational>(identity<Rational>(2), t) == t);
  CHECK(gl_action<Rational>(mat({{"2", "0"}, {"0", "1"}}), SymTensorQ::unit(2, 0)) == tensor(2, 1, {{{1, 0}, "2"}}));
  CHECK(gl_action<Rational>(mat({{"1", "1"}, {"0", "1"}}), tensor(2, 2, {{{0, 2}, "1"}})) ==
        tensor(2, 2, {{{2, 0}, "1"}, {{1, 1}, "2"}, {{0, 2}, "1"}}));
  CHECK_THROWS_AS(gl_action<Rational>(identity<Rational>(3), t), DimensionError);
}

TEST_CASE("sym_product is commutative and associative") {
  Rng rng = named_stream(11, "symtensor-assoc");
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const int ra = static_cast<int>(rng() % 3), rb = static_cast<int>(rng() % 3);
    const int rc = static_cast<int>(rng() % 2);
    const auto a = random_tensor(rng, n, ra), b = random_tensor(rng, n, rb), c = random_tensor(rng, n, rc);
    CHECK(sym_product(a, b) == sym_product(b, a));
    CHECK(sym_product(sym_product(a, b), c) == sym_product(a, sym_product(b, c)));
  }
}

TEST_CASE("gl_action respects composition and linearity") {
  Rng rng = named_stream(12, "symtensor-gl");
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int r = static_cast<int>(rng() % 4);
    const MatrixQ phi = random_invertible_matrix(rng, n, 3, 2);
    const MatrixQ psi = random_invertible_matrix(rng, n, 3, 2);
    const auto t = random_tensor(rng, n, r), s = random_tensor(rng, n, r);
    CHECK(gl_action<Rational>(phi * psi, t) == gl_action<Rational>(phi, gl_action<Rational>(psi, t)));
    CHECK(gl_action<Rational>(phi, t + s * q("2/3")) ==
          gl_action<Rational>(phi, t) + gl_action<Rational>(phi, s) * q("2/3"));
    const VectorQ x = random_rational_vector(rng, n, 3, 3);
    CHECK(gl_action<Rational>(phi, vector_power(x, r)) == vector_power(VectorQ(phi * x), r));
  }
}

TEST_CASE("powers multiply") {
  Rng rng = named_stream(13, "symtensor-powers");
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const VectorQ x = random_rational_vector(rng, n, 4, 3);
    const int r = static_cast<int>(rng() % 4), s = static_cast<int>(rng() % 4);
    CHECK(sym_product(vector_power(x, r), vector_power(x, s)) == vector_power(x, r + s));
  }
}

TEST_CASE("tensor invariants") {
  SymTensorQ t(3, 2);
  t.add({1, 1, 0}, q("1/2"));
  t.add({1, 1, 0}, q("-1/2"));
  CHECK(t.is_zero());
  CHECK(t == SymTensorQ(3, 2));
  CHECK_THROWS_AS(t.add({1, 0, 0}, 1), DimensionError);
  CHECK(SymTensorQ::scalar(3, 5).coeffs().begin()->first == MultiIndex(3));
}
