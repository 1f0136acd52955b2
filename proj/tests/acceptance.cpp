// Acceptance criteria 1-10. One PASS/FAIL line per criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "valuta/cli.hpp"
#include "valuta/complex.hpp"
#include "valuta/invariants.hpp"
#include "valuta/moment.hpp"
#include "valuta/random.hpp"
#include "valuta/suites.hpp"
#include "valuta/valuation.hpp"

using namespace valuta;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int number, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string detail = outcome.detail;
  if (limit_seconds > 0 && elapsed >= limit_seconds) {
    outcome.pass = false;
    detail += " [over time limit " + std::to_string(limit_seconds) + " s]";
  }
  if (!outcome.pass) ++failures;
  std::printf("%s criterion %d: %s (%.2f s) %s\n", outcome.pass ? "PASS" : "FAIL", number, title.c_str(), elapsed,
              detail.c_str());
  std::fflush(stdout);
}

std::string residual_text(const Report& r) {
  if (const auto* q = std::get_if<Rational>(&r.max_residual)) return format_rational(*q);
  std::ostringstream s;
  s << std::get<double>(r.max_residual);
  return s.str();
}

bool exact_zero(const Report& r) {
  const auto* q = std::get_if<Rational>(&r.max_residual);
  return r.pass && q != nullptr && *q == 0;
}

Rational fact(int k) {
  Rational out = 1;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

// Dirichlet: int_{Delta^n} x^alpha = prod alpha_i! / (n + |alpha|)!, and the M^r coefficient carries 1/alpha!.
Outcome moment_exactness() {
  const PolytopeQ tri = standard_simplex<Rational>(2);
  int compared = 0;
  for (int r = 0; r <= 3; ++r) {
    const SymTensorQ m = moment_tensor(tri, r);
    for (int a = 0; a <= r; ++a) {
      const MultiIndex alpha({a, r - a});
      const Rational integral = fact(a) * fact(r - a) / fact(2 + r);
      const Rational expected = integral / (fact(a) * fact(r - a));
      if (m.coeff(alpha) != expected) return {false, "mismatch at " + alpha.key()};
      ++compared;
    }
    if (static_cast<int>(m.coeffs().size()) != r + 1) return {false, "unexpected support at r=" + std::to_string(r)};
  }
  return {true, std::to_string(compared) + " coefficients equal"};
}

Outcome translation_covariance() {
  SuiteConfig c;
  c.m = 2;
  c.rank = 3;
  c.samples = 100;
  c.seed = 2024;
  const Report r = run_suite("covariance", c);
  return {exact_zero(r), "100 pairs in R^4, ranks 0..3, max residual " + residual_text(r)};
}

Outcome equivariance() {
  for (int m = 2; m <= 3; ++m)
    for (int rank = 0; rank <= 3; ++rank) {
      SuiteConfig c;
      c.m = m;
      c.rank = rank;
      c.samples = 200;
      c.seed = 3000 + static_cast<std::uint64_t>(10 * m + rank);
      const Report r = run_suite("equivariance", c);
      if (!exact_zero(r))
        return {false, "m=" + std::to_string(m) + " r=" + std::to_string(rank) + " residual " + residual_text(r)};
    }
  return {true, "200 shear products per (m, r), m=2,3, r=0..3, crosspolytope and simplex, residual 0"};
}

Outcome determinant_identity() {
  int checked = 0;
  for (int m = 2; m <= 3; ++m) {
    Rng rng = named_stream(4000 + static_cast<std::uint64_t>(m), "acceptance-detid");
    for (int s = 0; s < 1000; ++s) {
      const CMatrixQ a = random_complex_matrix(rng, m, 5, 3);
      if (determinant<Rational>(realify(a)) != det_c(a).norm_sq()) return {false, "m=" + std::to_string(m)};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " matrices (1000 per m), exact equality"};
}

Outcome invariant_dimensions() {
  struct Row {
    AlgebraKind kind;
    int m;
    std::vector<int> dims;  // r = 1..4
  };
  const std::vector<Row> table{{AlgebraKind::sl_m_R_diagonal, 2, {0, 1, 0, 1}},
                               {AlgebraKind::sl_m_R_diagonal, 3, {0, 0, 0, 0}},
                               {AlgebraKind::sl_m_C_realified, 2, {0, 0, 0, 0}},
                               {AlgebraKind::sl_m_C_realified, 3, {0, 0, 0, 0}}};
  std::string got;
  bool pass = true;
  for (const auto& row : table) {
    const AlgebraSpec spec = make_algebra(row.kind, row.m);
    got += to_string(row.kind) + "/m=" + std::to_string(row.m) + ":";
    for (int r = 1; r <= 4; ++r) {
      const int dim = static_cast<int>(invariant_subspace(spec, r).size());
      got += std::to_string(dim);
      pass = pass && dim == row.dims[static_cast<std::size_t>(r - 1)];
    }
    got += " ";
  }
  return {pass, got};
}

Outcome mcmullen() {
  Rng rng = named_stream(6000, "acceptance-mcmullen");
  int bodies = 0;
  for (int n = 2; n <= 4; ++n)
    for (const PolytopeQ& body : {random_simplex(rng, n), random_box(rng, n), random_crosspolytope(rng, n)}) {
      const auto z = volume_valuation<Rational>(n);
      const auto parts = mcmullen_decompose(z, body);
      if (static_cast<int>(parts.size()) != n + 1) return {false, "wrong component count"};
      for (int j = 0; j < n; ++j)
        if (!parts[static_cast<std::size_t>(j)].is_zero()) return {false, body.family() + " nonzero Z_" + std::to_string(j)};
      if (parts[static_cast<std::size_t>(n)] != SymTensorQ::scalar(n, volume(body)))
        return {false, body.family() + " Z_n != V"};
      for (const Rational& lambda : {rational(7, 3), rational(5, 11)})
        if (homogeneity_residual(z, body, lambda, parts) != 0) return {false, body.family() + " homogeneity"};
      ++bodies;
    }
  return {true, std::to_string(bodies) + " bodies in n=2..4, components (0,...,0,V), residual 0 at lambda=7/3, 5/11"};
}

Outcome surface_pairing_and_transfer() {
  const PolytopeQ tri = standard_simplex<Rational>(2), square = unit_cube<Rational>(2);
  const double pairing = surface_pairing(support_function(square), tri).value();
  const Rational sum_area = volume(minkowski_sum_2d(tri, square));
  const double mixed = to_double(sum_area - volume(tri) - volume(square));
  const double pair_err = std::max(std::abs(pairing - mixed), std::abs(pairing - 2.0));
  const MatrixQ shear = MatrixQ{{1, 1}, {0, 1}};
  const Report t1 = transfer_check(support_function(square), shear, tri, 1e-10);
  const PolytopeQ skew = polygon<Rational>({VectorQ{{0, 0}}, VectorQ{{2, 0}}, VectorQ{{3, 1}}, VectorQ{{0, 1}}});
  const Report t2 = transfer_check(support_function(square), shear, skew, 1e-10);
  std::ostringstream s;
  s << "pairing " << pairing << ", V(K+C)=" << format_rational(sum_area) << ", error " << pair_err << "; transfer residuals "
    << residual_text(t1) << ", " << residual_text(t2);
  return {pair_err <= 1e-12 && sum_area == rational(7, 2) && t1.pass && t2.pass, s.str()};
}

Outcome adapted_bases() {
  std::vector<std::pair<int, int>> combos;
  for (int m = 2; m <= 3; ++m)
    for (int j = 1; j <= 2 * m - 1; ++j) combos.emplace_back(m, j);

  Rng rng = named_stream(8000, "acceptance-adapted");
  double ortho = 0, span = 0, jdefect = 0;
  for (int s = 0; s < 500; ++s) {
    const auto [m, j] = combos[static_cast<std::size_t>(s) % combos.size()];
    const auto sample = sample_subspace(m, j, rng);
    const auto out = adapted_basis(sample.subspace);
    ortho = std::max(ortho, orthonormality_defect(out.basis));
    span = std::max(span, span_residual(out.basis, sample.subspace.basis));
    const Eigen::MatrixXd jm = complex_structure<double>(m);
    const int d = out.complex_rank;
    if (d != std::min(j, m)) return {false, "complex rank below maximal"};
    for (int l = 0; d + l < j; ++l)
      jdefect = std::max(jdefect, (out.basis.col(d + l) - jm * out.basis.col(l)).cwiseAbs().maxCoeff());
  }

  Rng draws = named_stream(8001, "acceptance-draws");
  long retries = 0;
  for (int s = 0; s < 10000; ++s) {
    const auto [m, j] = combos[static_cast<std::size_t>(s) % combos.size()];
    retries += sample_subspace(m, j, draws).retries;
  }
  std::ostringstream msg;
  msg << "500 bases: orthonormality " << ortho << ", span " << span << ", J-form " << jdefect << "; retries over 1e4 draws "
      << retries;
  return {ortho <= 1e-10 && span <= 1e-10 && jdefect <= 1e-10 && retries == 0, msg.str()};
}

// Every theta of total r whose pair sums match the case split with s = (r - j') / m.
std::set<MultiIndex> brute_force_weights(int m, int j, int r) {
  const int jp = j < m ? j : j - m;
  std::set<MultiIndex> out;
  std::vector<int> theta(static_cast<std::size_t>(2 * m), 0);
  std::function<void(int, int)> walk = [&](int pos, int left) {
    if (pos == 2 * m - 1) {
      theta.back() = left;
      const int s = theta[static_cast<std::size_t>(m - 1)] + theta.back();
      if (r != m * s + jp) return;
      for (int l = 0; l < m - 1; ++l) {
        const int pair = theta[static_cast<std::size_t>(l)] + theta[static_cast<std::size_t>(m + l)];
        if (pair != (l < jp ? s + 1 : s)) return;
      }
      out.insert(MultiIndex(theta));
      return;
    }
    for (int a = 0; a <= left; ++a) {
      theta[static_cast<std::size_t>(pos)] = a;
      walk(pos + 1, left - a);
    }
  };
  walk(0, r);
  return out;
}

Outcome weight_enumerator() {
  int cases = 0, empty = 0;
  for (int m = 2; m <= 3; ++m)
    for (int j = 1; j <= 2 * m - 1; ++j) {
      if (j == m) continue;
      const int jp = j < m ? j : j - m;
      for (int r = 0; r <= 6; ++r) {
        const auto res = enumerate_admissible_weights(m, j, r);
        const std::set<MultiIndex> got(res.weights.begin(), res.weights.end());
        const std::string where = "m=" + std::to_string(m) + " j=" + std::to_string(j) + " r=" + std::to_string(r);
        if (got.size() != res.weights.size()) return {false, "duplicates at " + where};
        if (got != brute_force_weights(m, j, r)) return {false, "mismatch at " + where};
        const bool divisible = r >= jp && (r - jp) % m == 0;
        if (got.empty() == divisible) return {false, "emptiness rule fails at " + where};
        if (res.s.has_value() != divisible || (divisible && *res.s != (r - jp) / m))
          return {false, "s wrong at " + where};
        empty += got.empty() ? 1 : 0;
        ++cases;
      }
    }
  return {true, std::to_string(cases) + " (m, j, r) cases, " + std::to_string(empty) + " empty"};
}

Outcome negative_controls() {
  std::string detail;
  bool pass = true;
  for (const std::string suite : {"covariance", "equivariance", "mcmullen"})
    for (const std::string rank : {"0", "2"}) {
      std::ostringstream out, err;
      const int clean = cli::run({"verify", suite, "--rank", rank}, out, err);
      const int faulty = cli::run({"verify", suite, "--rank", rank, "--inject-fault"}, out, err);
      detail += suite + "/r=" + rank + ":" + std::to_string(clean) + "->" + std::to_string(faulty) + " ";
      pass = pass && clean == 0 && faulty != 0;
    }
  return {pass, detail};
}

}  // namespace

int main() {
  criterion(1, "moment exactness on the standard triangle, r <= 3", 1.0, moment_exactness);
  criterion(2, "translation covariance, 100 random pairs in R^4", 30.0, translation_covariance);
  criterion(3, "SL(m,C) equivariance of M^r", 120.0, equivariance);
  criterion(4, "det_R(realify A) = |det_C A|^2", 10.0, determinant_identity);
  criterion(5, "invariant dimensions", 120.0, invariant_dimensions);
  criterion(6, "McMullen extraction for Z = V", 0.0, mcmullen);
  criterion(7, "surface pairing and transfer identity", 0.0, surface_pairing_and_transfer);
  criterion(8, "adapted bases and maximal-rank sampling", 0.0, adapted_bases);
  criterion(9, "weight enumerator against brute force", 0.0, weight_enumerator);
  criterion(10, "negative controls flip the exit code", 0.0, negative_controls);
  return failures;
}
