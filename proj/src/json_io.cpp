#include "valuta/json_io.hpp"

#include <fstream>
#include <sstream>

namespace valuta {

namespace {

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number()) return parse_rational(j.dump());
  throw ParseError("expected a rational number, got " + j.dump());
}

int int_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw ParseError(std::string("missing or non-integer field '") + key + "'");
  return j.at(key).get<int>();
}

const Json& array_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw ParseError(std::string("missing array field '") + key + "'");
  return j.at(key);
}

VectorQ vector_from_json(const Json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError("expected a vector of length " + std::to_string(n));
  VectorQ v(n);
  for (int i = 0; i < n; ++i) v(i) = rational_from_json(j[static_cast<std::size_t>(i)]);
  return v;
}

Json vector_to_json(const VectorQ& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(format_rational(v(i)));
  return out;
}

MatrixQ matrix_from_json(const Json& j, int m) {
  if (!j.is_array() || static_cast<int>(j.size()) != m) throw ParseError("expected " + std::to_string(m) + " rows");
  MatrixQ a(m, m);
  for (int r = 0; r < m; ++r) a.row(r) = vector_from_json(j[static_cast<std::size_t>(r)], m).transpose();
  return a;
}

Json matrix_to_json(const MatrixQ& a) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) out.push_back(vector_to_json(a.row(r).transpose()));
  return out;
}

}  // namespace

Json tensor_to_json(const SymTensorQ& t) {
  Json coeffs = Json::object();
  for (const auto& [alpha, c] : t.coeffs()) coeffs[alpha.key()] = format_rational(c);
  return Json{{"dim", t.dim()}, {"rank", t.rank()}, {"coeffs", coeffs}};
}

Json tensor_to_json(const SymTensor<double>& t) {
  Json coeffs = Json::object();
  for (const auto& [alpha, c] : t.coeffs()) coeffs[alpha.key()] = c;
  return Json{{"dim", t.dim()}, {"rank", t.rank()}, {"coeffs", coeffs}};
}

SymTensorQ tensor_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("tensor must be a JSON object");
  const int n = int_field(j, "dim");
  const int r = int_field(j, "rank");
  if (n < 1 || n > MultiIndex::kMaxDim || r < 0) throw ParseError("tensor dim or rank out of range");
  SymTensorQ t(n, r);
  if (!j.contains("coeffs") || !j.at("coeffs").is_object()) throw ParseError("missing object field 'coeffs'");
  for (const auto& [key, value] : j.at("coeffs").items()) {
    MultiIndex alpha;
    try {
      alpha = MultiIndex::from_key(key);
    } catch (const std::exception& e) {
      throw ParseError("bad multi-index key '" + key + "': " + e.what());
    }
    try {
      t.add(alpha, rational_from_json(value));
    } catch (const DimensionError& e) {
      throw ParseError(e.what());
    }
  }
  return t;
}

Json polytope_to_json(const PolytopeQ& p) {
  Json out{{"dim", p.dim()}};
  Json verts = Json::array();
  for (const auto& v : p.vertices()) verts.push_back(vector_to_json(v));
  out["vertices"] = verts;
  if (p.has_triangulation()) out["triangulation"] = p.cells();
  if (p.has_imported_facets()) {
    Json facets = Json::array();
    for (const auto& f : p.imported_facets()) {
      Json fj{{"normal", vector_to_json(f.normal)}};
      auto root = rational_power(f.measure_sq, 1, 2);
      if (root)
        fj["measure"] = format_rational(*root);
      else
        fj["measure"] = f.measure();
      facets.push_back(fj);
    }
    out["facets"] = facets;
  }
  return out;
}

PolytopeQ polytope_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("polytope must be a JSON object");
  const int n = int_field(j, "dim");
  if (n < 1 || n > MultiIndex::kMaxDim) throw ParseError("polytope dim out of range");
  const Json& vj = array_field(j, "vertices");
  if (vj.empty()) throw ParseError("polytope needs at least one vertex");
  std::vector<VectorQ> verts;
  for (const auto& v : vj) verts.push_back(vector_from_json(v, n));

  PolytopeQ p;
  if (j.contains("triangulation")) {
    p = PolytopeQ(n, verts);
    std::vector<Cell> cells;
    for (const auto& c : array_field(j, "triangulation")) {
      if (!c.is_array()) throw ParseError("triangulation cells must be index arrays");
      cells.push_back(c.get<Cell>());
    }
    p.set_cells(std::move(cells));
  } else if (static_cast<int>(verts.size()) == n + 1 && affine_dimension(verts) == n) {
    p = simplex(verts);
  } else if (n == 2 && affine_dimension(verts) == 2) {
    p = polygon(convex_hull_2d(verts));
  } else {
    p = PolytopeQ(n, verts);
  }

  if (j.contains("facets")) {
    std::vector<FacetDatum<Rational>> facets;
    for (const auto& f : array_field(j, "facets")) {
      if (!f.is_object() || !f.contains("normal") || !f.contains("measure"))
        throw ParseError("facet entries need 'normal' and 'measure'");
      VectorQ u = vector_from_json(f.at("normal"), n);
      const Rational w = rational_from_json(f.at("measure"));
      const Rational norm_sq = u.squaredNorm();
      if (norm_sq == 0 || w <= 0) throw ParseError("facet needs a nonzero normal and positive measure");
      facets.push_back({u, norm_sq, w * w});
    }
    p.set_imported_facets(std::move(facets));
  }
  return p;
}

Json cmatrix_to_json(const CMatrixQ& a) {
  return Json{{"m", a.size()}, {"re", matrix_to_json(a.re)}, {"im", matrix_to_json(a.im)}};
}

CMatrixQ cmatrix_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("matrix must be a JSON object");
  const int m = int_field(j, "m");
  if (m < 1) throw ParseError("matrix size must be positive");
  return CMatrixQ(matrix_from_json(array_field(j, "re"), m), matrix_from_json(array_field(j, "im"), m));
}

Json report_to_json(const Report& r) {
  Json out{{"check", r.check}, {"witnesses", r.witnesses}};
  if (const auto* q = std::get_if<Rational>(&r.max_residual))
    out["max_residual"] = format_rational(*q);
  else
    out["max_residual"] = std::get<double>(r.max_residual);
  out["pass"] = r.pass;
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON in '") + path + "': " + e.what());
  }
}

}  // namespace valuta
