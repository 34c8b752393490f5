/**
 * @file io.hpp
 * @brief JSON forms of algebra definitions, matrices and differential forms.
 *
 * Matrix = {"re": [[..]], "im": [[..]]} (row-major; "im" may be omitted).
 * Algebra = {"m": int, "label": string, "basis": [Matrix..], "alpha": optional [Vector..]}
 * where each alpha column is {"re": [..], "im": [..]} of length n^2 in pair order (a, b) -> n a + b.
 */
#pragma once

#include "ncg/calculus.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace ncg {

using Json = nlohmann::ordered_json;

struct AlgebraFile {
    int m = 0;
    std::string label;
    std::vector<CMatrix> basis;
    std::optional<CMatrix> alpha;  ///< n^2 x R
};

/// Throws IoError.
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// Throws ParseError on malformed JSON or wrong types, ShapeError on inconsistent sizes.
Json parse_json(const std::string& text);

Json matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const Json& j);

Json vector_to_json(const CVector& v);
CVector vector_from_json(const Json& j);

Json algebra_to_json(const AlgebraFile& a);
AlgebraFile algebra_from_json(const Json& j);

/// Accepts a bare Matrix or {"u": Matrix}.
CMatrix transform_from_json(const Json& j);

/// {"degree": p, "coefficients": [{"index": [b_1..b_p] (1-based), "matrix": Matrix}..]}; zero entries omitted.
Json form_to_json(const Form& xi, double zero_tol = 0.0);
Form form_from_json(const TowerPtr& tower, const Json& j);

}  // namespace ncg
