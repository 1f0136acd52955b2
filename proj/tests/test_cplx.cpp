#include <doctest.h>

#include "support.hpp"
#include "valuta/complex.hpp"

using namespace valuta;
using namespace valuta::testing;

namespace {

Eigen::MatrixXd columns(std::initializer_list<Eigen::VectorXd> cols) {
  Eigen::MatrixXd a(cols.begin()->size(), static_cast<Eigen::Index>(cols.size()));
  Eigen::Index c = 0;
  for (const auto& v : cols) a.col(c++) = v;
  return a;
}

Eigen::VectorXd e(int n, int i) { return Eigen::VectorXd::Unit(n, i); }

}  // namespace

TEST_CASE("realify examples") {
  CHECK(realify(CMatrixQ::identity(3)) == MatrixQ(MatrixQ::Identity(6, 6)));
  CMatrixQ i2(MatrixQ::Zero(2, 2), MatrixQ::Identity(2, 2));
  CHECK(realify(i2) == complex_structure<Rational>(2));
  CHECK(determinant<Rational>(realify(i2)) == 1);
  const auto d = sl_diag<Rational>({ComplexQ(0, 1), ComplexQ(0, -1)});
  CHECK(determinant<Rational>(realify(d)) == 1);
  CMatrixQ a = CMatrixQ::identity(2);
  a.set(0, 0, ComplexQ(0, 1));
  CHECK(determinant<Rational>(realify(a)) == det_c(a).norm_sq());
  CHECK(det_c(a).norm_sq() == 1);
}

TEST_CASE("det identity examples") {
  CMatrixQ a = CMatrixQ::identity(2);
  a.set(0, 0, ComplexQ(2));
  a.set(1, 1, ComplexQ(q("1/2")));
  CHECK(det_identity_check(a));
  CHECK(determinant<Rational>(realify(a)) == 1);
  CMatrixQ b = CMatrixQ::identity(2);
  b.set(0, 0, ComplexQ(1, 1));
  CHECK(det_identity_check(b));
  CHECK(determinant<Rational>(realify(b)) == 2);
}

TEST_CASE("realify is a homomorphism commuting with J") {
  Rng rng = named_stream(41, "cplx-hom");
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 2 + trial % 2;
    const auto a = random_complex_matrix(rng, m, 3, 2), b = random_complex_matrix(rng, m, 3, 2);
    CHECK(realify(a * b) == MatrixQ(realify(a) * realify(b)));
    const MatrixQ j = complex_structure<Rational>(m);
    CHECK(MatrixQ(j * realify(a)) == MatrixQ(realify(a) * j));
    CHECK(det_identity_check(a));
  }
}

TEST_CASE("complex determinant") {
  CMatrixQ a = CMatrixQ::zero(2);
  a.set(0, 0, ComplexQ(1, 1));
  a.set(0, 1, ComplexQ(2));
  a.set(1, 0, ComplexQ(0, 1));
  a.set(1, 1, ComplexQ(3, -1));
  // (1+i)(3-i) - 2i = 4 + 2i - 2i = 4
  CHECK(det_c(a) == ComplexQ(4));
  CHECK(det_c(CMatrixQ::zero(3)) == ComplexQ(0));
}

TEST_CASE("SL(m,C) generators") {
  CHECK(det_c(sl_shear<Rational>(2, 0, 1, ComplexQ(0, 1))) == ComplexQ(1));
  CHECK(det_c(sl_diag<Rational>({ComplexQ(q("3/2")), ComplexQ(q("2/3"))})) == ComplexQ(1));
  CHECK_THROWS_AS(sl_diag<Rational>({ComplexQ(2), ComplexQ(2)}), std::invalid_argument);
  CHECK_THROWS_AS(sl_shear<Rational>(2, 1, 1, ComplexQ(1)), std::invalid_argument);
  Rng rng = named_stream(42, "cplx-sl");
  CHECK(det_c(random_shear_product(rng, 3, 6)) == ComplexQ(1));
  const auto u = random_special_unitary(rng, 3);
  const Eigen::MatrixXd r = realify(u);
  CHECK((r.transpose() * r - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
  const auto d = det_c(u);
  CHECK(std::abs(d.re - 1.0) < 1e-12);
  CHECK(std::abs(d.im) < 1e-12);
}

TEST_CASE("complex rank examples") {
  const auto j2 = complex_structure<Rational>(2);
  MatrixQ l1(4, 2);
  l1 << unit_vec(4, 0), VectorQ(j2 * unit_vec(4, 0));
  CHECK(complex_rank<Rational>(l1) == 1);
  MatrixQ l2(4, 2);
  l2 << unit_vec(4, 0), unit_vec(4, 1);
  CHECK(complex_rank<Rational>(l2) == 2);
  MatrixQ l3(4, 3);
  l3 << unit_vec(4, 0), VectorQ(j2 * unit_vec(4, 0)), unit_vec(4, 1);
  CHECK(complex_rank<Rational>(l3) == 2);
  CHECK(complex_rank<double>(cast_matrix<double>(l3)) == 2);
  CHECK(exact_subspace(l3).complex_rank == 2);
}

TEST_CASE("adapted basis examples") {
  const Eigen::MatrixXd j = complex_structure<double>(2);
  {
    const auto out = adapted_basis(make_subspace(columns({e(4, 0), j * e(4, 0)})));
    CHECK(out.complex_rank == 1);
    CHECK(span_residual(out.basis, columns({e(4, 0), j * e(4, 0)})) < 1e-12);
    CHECK(out.basis.col(1) == j * out.basis.col(0));
  }
  {
    const auto out = adapted_basis(make_subspace(columns({e(4, 0), e(4, 1)})));
    CHECK(out.complex_rank == 2);
    CHECK((out.basis - columns({e(4, 0), e(4, 1)})).cwiseAbs().maxCoeff() < 1e-12);
  }
  {
    const auto out = adapted_basis(make_subspace(columns({e(4, 0), j * e(4, 0), e(4, 1)})));
    CHECK(out.complex_rank == 2);
    CHECK((out.basis - columns({e(4, 0), e(4, 1), j * e(4, 0)})).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(has_adapted_form(out));
  }
}

TEST_CASE("adapted basis properties on samples") {
  Rng rng = named_stream(43, "cplx-adapted");
  for (int m = 2; m <= 3; ++m)
    for (int dim = 1; dim <= 2 * m - 1; ++dim)
      for (int trial = 0; trial < 10; ++trial) {
        const auto sample = sample_subspace(m, dim, rng);
        CHECK(sample.retries == 0);
        CHECK(sample.subspace.complex_rank == std::min(dim, m));
        const auto out = adapted_basis(sample.subspace);
        CHECK(orthonormality_defect(out.basis) <= 1e-10);
        CHECK(span_residual(out.basis, sample.subspace.basis) <= 1e-10);
        CHECK(has_adapted_form(out));
        CHECK(complex_rank(out) == complex_rank(sample.subspace));
      }
}

TEST_CASE("adapted basis with a non-generic intersection") {
  Rng rng = named_stream(44, "cplx-special");
  const Eigen::MatrixXd j = complex_structure<double>(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::normal_distribution<double> gauss;
    Eigen::VectorXd u(6), w(6);
    for (int i = 0; i < 6; ++i) {
      u(i) = gauss(rng);
      w(i) = gauss(rng);
    }
    const auto l = make_subspace(columns({u, w, j * u}));
    const auto out = adapted_basis(l);
    CHECK(out.complex_rank == 2);
    CHECK(orthonormality_defect(out.basis) <= 1e-10);
    CHECK(span_residual(out.basis, l.basis) <= 1e-10);
    CHECK(out.basis.col(2) == j * out.basis.col(0));
  }
}

TEST_CASE("subspace input validation") {
  CHECK_THROWS_AS(make_subspace(columns({e(4, 0), e(4, 0)})), NumericError);
  CHECK_THROWS_AS(exact_subspace(MatrixQ(mat({{"1", "1"}, {"0", "1"}, {"0", "0"}, {"0", "0"}}))), NumericError);
  Rng rng = named_stream(45, "cplx-range");
  CHECK_THROWS_AS(sample_subspace(2, 4, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_subspace(2, 0, rng), std::invalid_argument);
}
