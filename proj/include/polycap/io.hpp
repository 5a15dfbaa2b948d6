#pragma once

#include <string>
#include <string_view>

#include <json.hpp>
#include "polycap/matrix.hpp"
#include "polycap/polynomial.hpp"

// JSON input and output formats.
namespace polycap::io {

using Json = nlohmann::ordered_json;

/// Parses {"kind":"sparse","n":3,"terms":[{"exp":[1,1,1],"coef":"6"}]},
/// {"kind":"product","matrix":[["1/2","1/2"],...]} (alias "matrix") or
/// {"kind":"determinantal","matrices":[[[...]],...]}. Scalars are decimal or
/// rational strings, or JSON numbers (taken as the exact binary value).
/// Throws InputError with a line/column for malformed JSON and a field path
/// for schema errors.
Polynomial parse_polynomial(std::string_view text, ScalarMode mode = ScalarMode::exact);
Polynomial read_polynomial(const std::string& path, ScalarMode mode = ScalarMode::exact);

/// Square matrix from a product/matrix document.
RationalMatrix parse_matrix(std::string_view text);
RationalMatrix read_matrix(const std::string& path);

Json to_json(const Polynomial& p);
Json to_json(const RationalMatrix& m);
Json to_json(const RealMatrix& m);

std::string read_file(const std::string& path);

}  // namespace polycap::io
