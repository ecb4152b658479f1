#pragma once

#include "stf/harmonics.hpp"
#include "stf/maxwell.hpp"
#include "stf/sym_tensor.hpp"

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>
#include <string>

namespace stf {
namespace io {

// JSON schemas
//
//   tensor:     { "rank": l, "dim": n, "components": { "xxy": "2/3", "zz": 0.25 } }
//   polynomial: { "terms": [ { "rank": l, "tensor": <tensor> } ] }
//   expansion:  { "coeffs": { "<l>": <tensor> } }
//   harmonics:  { "basis": "complex"|"real", "coeffs": { "<l>,<m>": ["re", "im"] } }
//
// Component keys are sorted index strings (x/y/z for dim 3, i1..in
// otherwise); missing keys are zero. Rationals are "p/q" strings, floats
// are JSON numbers; readers accept either and embed floats exactly.

std::string component_key(std::span<const int> exps, int dim);
std::vector<int> parse_component_key(const std::string& key, int rank, int dim);

nlohmann::json tensor_to_json(const SymTensor<Exact>& t, bool as_float = false);
SymTensor<Exact> tensor_from_json(const nlohmann::json& j);

nlohmann::json polynomial_to_json(const AngularPolynomial& p, bool as_float = false);
AngularPolynomial polynomial_from_json(const nlohmann::json& j);

nlohmann::json expansion_to_json(const MultipoleExpansion& e, bool as_float = false);
MultipoleExpansion expansion_from_json(const nlohmann::json& j);

nlohmann::json sph_coeffs_to_json(const SphCoeffs& c);
SphCoeffs sph_coeffs_from_json(const nlohmann::json& j);

/// Parses a file into JSON; throws ParseError with the filename on failure.
nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

/// Scalar rendered for reports: exact form plus a numeric value.
nlohmann::json exact_to_json(const Exact& e);

} // namespace io
} // namespace stf
