#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "valuta/complex.hpp"
#include "valuta/polytope.hpp"
#include "valuta/sym_tensor.hpp"
#include "valuta/valuation.hpp"

namespace valuta {

using Json = nlohmann::ordered_json;

/// {"dim", "rank", "coeffs": {"a1,...,an": "p/q"}}, keys in ascending multi-index order.
Json tensor_to_json(const SymTensorQ& t);
Json tensor_to_json(const SymTensor<double>& t);
SymTensorQ tensor_from_json(const Json& j);

/// {"dim", "vertices", "triangulation"?, "facets"?: [{"normal", "measure"}]}.
Json polytope_to_json(const PolytopeQ& p);

/// Parses a polytope. Without a triangulation, n+1 affinely independent vertices become a
/// simplex and planar point sets become their convex hull; other inputs stay untriangulated.
PolytopeQ polytope_from_json(const Json& j);

/// {"m", "re": [[...]], "im": [[...]]}.
Json cmatrix_to_json(const CMatrixQ& a);
CMatrixQ cmatrix_from_json(const Json& j);

/// {"check", "witnesses", "max_residual", "pass"}; exact residuals as "p/q" strings.
Json report_to_json(const Report& r);

/// Reads a whole file into a JSON value; throws ParseError on malformed input.
Json read_json_file(const std::string& path);

}  // namespace valuta
