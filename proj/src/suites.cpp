#include "valuta/suites.hpp"

#include <algorithm>

#include "valuta/complex.hpp"
#include "valuta/random.hpp"

namespace valuta {

namespace {

/// Worst residual over several reports. The witness is the first failing context, or the
/// context of the worst residual when everything passes.
class Aggregate {
 public:
  explicit Aggregate(std::string check) : check_(std::move(check)) {}

  template <class S>
  void add(const S& residual, bool pass, const std::string& context) {
    if constexpr (is_exact_v<S>) {
      exact_ = true;
      if (residual > worst_q_) {
        worst_q_ = residual;
        worst_context_ = context;
      }
    } else {
      if (residual > worst_d_) {
        worst_d_ = residual;
        worst_context_ = context;
      }
    }
    if (!pass && failing_.empty()) failing_ = context;
  }

  void add(const Report& r, const std::string& context) {
    std::string full = context;
    for (const auto& w : r.witnesses) full += " " + w;
    if (const auto* q = std::get_if<Rational>(&r.max_residual))
      add(*q, r.pass, full);
    else
      add(std::get<double>(r.max_residual), r.pass, full);
  }

  Report finish() const {
    Report out{check_, {}, {}, failing_.empty()};
    const std::string& witness = failing_.empty() ? worst_context_ : failing_;
    if (!witness.empty()) out.witnesses = {witness};
    if (exact_)
      out.max_residual = worst_q_;
    else
      out.max_residual = worst_d_;
    return out;
  }

 private:
  std::string check_;
  bool exact_ = false;
  Rational worst_q_ = 0;
  double worst_d_ = 0;
  std::string worst_context_;
  std::string failing_;
};

template <class S>
Polytope<S> as_scalar(const PolytopeQ& p) {
  if constexpr (is_exact_v<S>)
    return p;
  else
    return cast_polytope<double>(p);
}

template <class S>
RMatrix<S> as_scalar(const MatrixQ& a) {
  if constexpr (is_exact_v<S>)
    return a;
  else
    return cast_matrix<double>(a);
}

template <class S>
Vector<S> as_scalar(const VectorQ& v) {
  if constexpr (is_exact_v<S>)
    return v;
  else
    return cast_vector<double>(v);
}

template <class S>
S scalar_of(const Rational& q) {
  if constexpr (is_exact_v<S>)
    return q;
  else
    return to_double(q);
}

int samples_or(const SuiteConfig& c, int fallback) { return c.samples >= 0 ? c.samples : fallback; }

std::string label(const std::string& kind, int index) { return kind + "#" + std::to_string(index); }

/// Rational orthogonal matrix (I - A)(I + A)^{-1} from a random skew-symmetric A.
MatrixQ cayley_rotation(Rng& rng, int n) {
  MatrixQ a = MatrixQ::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      a(i, k) = random_rational(rng, 2, 2);
      a(k, i) = -a(i, k);
    }
  const MatrixQ id = MatrixQ::Identity(n, n);
  return MatrixQ((id - a) * inverse<Rational>(MatrixQ(id + a)));
}

template <class S>
Valuation<S> translation_breaker(int n) {
  const auto m1 = moment_valuation<S>(n, 1);
  return volume_valuation<S>(n) + Valuation<S>{"centroid_sum", 0, n, Parity::none, TranslationBehavior::none,
                                               [m1](const Polytope<S>& k) { return coefficient_sum(m1(k)); }};
}

template <class S>
Report covariance_suite(const SuiteConfig& c) {
  Rng rng = named_stream(c.seed, "covariance");
  const int n = 2 * c.m;
  std::vector<Valuation<S>> zs;
  for (int i = 0; i <= c.rank; ++i) zs.push_back(moment_valuation<S>(n, c.rank - i));
  if (c.inject_fault) {
    // Corrupt the coefficient of the volume term; rank 0 has no such term, so break invariance instead.
    zs.back() = c.rank > 0 ? S(2) * zs.back() : translation_breaker<S>(n);
  }
  Aggregate agg("covariance");
  for (int s = 0; s < samples_or(c, 10); ++s) {
    const auto body = as_scalar<S>(random_polytope(rng, n));
    const auto y = as_scalar<S>(random_rational_vector(rng, n, 3, 3));
    agg.add(verify_covariance(zs, body, {y}, 1e-9), label(body.family(), s));
  }
  return agg.finish();
}

template <class S>
Report equivariance_suite(const SuiteConfig& c) {
  Rng rng = named_stream(c.seed, "equivariance");
  const int n = 2 * c.m;
  std::vector<RMatrix<S>> samples;
  for (int s = 0; s < samples_or(c, 50); ++s) samples.push_back(as_scalar<S>(realify(random_shear_product(rng, c.m, 3))));
  const auto m1 = moment_valuation<S>(n, 1);
  const Valuation<S> z = c.inject_fault
                             ? Valuation<S>{"coordinate_sum", 0, n, Parity::none, TranslationBehavior::none,
                                            [m1](const Polytope<S>& k) { return coefficient_sum(m1(k)); }}
                             : moment_valuation<S>(n, c.rank);
  Aggregate agg("equivariance");
  const std::vector<PolytopeQ> bodies{random_crosspolytope(rng, n), random_simplex(rng, n)};
  for (const auto& body : bodies) agg.add(verify_equivariance(z, samples, as_scalar<S>(body), 1e-8), body.family());
  return agg.finish();
}

template <class S>
Report mcmullen_suite(const SuiteConfig& c) {
  Rng rng = named_stream(c.seed, "mcmullen");
  const int n = 2 * c.m;
  const S lambda = scalar_of<S>(rational(7, 3));
  Aggregate agg("mcmullen");
  for (int s = 0; s < samples_or(c, 3); ++s) {
    const auto body = as_scalar<S>(random_polytope(rng, n));
    for (const auto& z : {volume_valuation<S>(n), moment_valuation<S>(n, c.rank)}) {
      const int degree = n + z.rank;
      const auto parts = mcmullen_decompose(z, body, c.inject_fault ? degree - 1 : degree);
      S res = homogeneity_residual(z, body, lambda, parts);
      // V and M^r are homogeneous of degree n + r: all other components vanish.
      for (int j = 0; j < static_cast<int>(parts.size()); ++j) {
        const auto& part = parts[static_cast<std::size_t>(j)];
        res = std::max(res, j == degree ? max_abs_diff(part, z(body)) : max_abs_coeff(part));
      }
      bool pass = true;
      if constexpr (is_exact_v<S>) {
        pass = res == 0;
      } else {
        res /= std::max(1.0, max_abs_coeff(z(scale(body, lambda))));
        pass = res <= 1e-6;
      }
      agg.add(res, pass, label(body.family(), s) + " " + z.name);
    }
  }
  return agg.finish();
}

template <class S>
Report klain_suite(const SuiteConfig& c) {
  Rng rng = named_stream(c.seed, "klain");
  const int n = 2 * c.m;
  Aggregate agg("klain");
  for (int s = 0; s < samples_or(c, 2); ++s) {
    for (int j = 1; j <= n; ++j) {
      Subspace<S> l;
      if constexpr (is_exact_v<S>) {
        l = exact_subspace(MatrixQ(cayley_rotation(rng, n).leftCols(j)));
      } else {
        l = j < n ? sample_subspace(c.m, j, rng).subspace : make_subspace(Eigen::MatrixXd::Identity(n, n));
      }
      Valuation<S> z = j == n ? volume_valuation<S>(n) : intrinsic_volume_in<S>(l.basis);
      if (c.inject_fault) z = z + euler_characteristic<S>(n);
      const auto k = klain(z, j, l);
      const S res = std::max(abs_value(S(k.value.value() - S(1))), k.probe_residual);
      agg.add(res, detail::residual_ok(res, 1e-9), label("j=" + std::to_string(j), s));
    }
  }
  return agg.finish();
}

Report transfer_suite(const SuiteConfig& c) {
  Rng rng = named_stream(c.seed, "transfer");
  Aggregate agg("transfer");
  for (int s = 0; s < samples_or(c, 20); ++s) {
    const bool planar = s % 2 == 0;
    const int n = planar ? 2 : 2 * c.m;
    const PolytopeQ body = planar ? random_polytope(rng, 2) : random_simplex(rng, n);
    MatrixQ phi;
    if (planar) {
      phi = MatrixQ::Identity(2, 2);
      phi(0, 1) = random_nonzero_rational(rng, 3, 2);
      phi(1, 0) = random_rational(rng, 2, 2);
      phi(1, 1) += phi(1, 0) * phi(0, 1);
    } else {
      phi = realify(random_shear_product(rng, c.m, 2));
    }
    if (s % 4 >= 2) phi.row(0) *= -1;  // det -1
    const PolytopeQ shape = translate(random_crosspolytope(rng, n), random_rational_vector(rng, n, 1, 2));
    agg.add(transfer_check(support_function(shape), phi, body, 1e-10, !c.inject_fault), label(body.family(), s));
  }
  return agg.finish();
}

template <class S>
Report detid_suite(const SuiteConfig& c) {
  Rng rng = named_stream(c.seed, "detid");
  Aggregate agg("detid");
  for (int s = 0; s < samples_or(c, 100); ++s) {
    const CMatrixQ a = random_complex_matrix(rng, c.m, 5, 3);
    RMatrix<S> real = as_scalar<S>(realify(a));
    if (c.inject_fault) {
      // Drop the sign of the upper-right block.
      real.topRightCorner(c.m, c.m) *= S(-1);
    }
    const S lhs = determinant<S>(real);
    const S rhs = scalar_of<S>(det_c(a).norm_sq());
    S res = abs_value(S(lhs - rhs));
    bool pass = true;
    if constexpr (is_exact_v<S>) {
      pass = res == 0;
    } else {
      res /= std::max(1.0, std::abs(rhs));
      pass = res <= 1e-9;
    }
    agg.add(res, pass, label("matrix", s));
  }
  return agg.finish();
}

template <class S>
Report dispatch(const std::string& name, const SuiteConfig& c) {
  if (name == "covariance") return covariance_suite<S>(c);
  if (name == "equivariance") return equivariance_suite<S>(c);
  if (name == "mcmullen") return mcmullen_suite<S>(c);
  if (name == "klain") return klain_suite<S>(c);
  if (name == "detid") return detid_suite<S>(c);
  if constexpr (is_exact_v<S>) {
    if (name == "transfer") throw UsageError("suite 'transfer' compares float facet normals; use --mode float");
  } else {
    if (name == "transfer") return transfer_suite(c);
  }
  throw UsageError("unknown suite '" + name + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"covariance", "detid", "equivariance", "klain", "mcmullen", "transfer"};
  return names;
}

Report run_suite(const std::string& name, const SuiteConfig& config) {
  if (config.m < 2) throw UsageError("--m must be at least 2");
  if (config.rank < 0) throw UsageError("--rank must be non-negative");
  if (2 * config.m > MultiIndex::kMaxDim) throw UsageError("--m too large");
  return config.mode == Mode::exact ? dispatch<Rational>(name, config) : dispatch<double>(name, config);
}

}  // namespace valuta
