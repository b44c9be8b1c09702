#pragma once

#include "json.hpp"

#include "pencilform/blocks.hpp"
#include "pencilform/chernikov.hpp"
#include "pencilform/cohomology.hpp"
#include "pencilform/matrix.hpp"
#include "pencilform/oracle.hpp"
#include "pencilform/skew.hpp"

namespace pencilform {

using Json = nlohmann::json;

// Readers validate structure and ranges and throw ContractError with the
// offending path; writers produce the same shapes.

[[nodiscard]] Prime prime_from_json(const Json& j, const char* path = "p");

[[nodiscard]] Json to_json(const Matrix& m);
/// {"p", "rows"} or a bare array of rows (then p must be supplied).
[[nodiscard]] Matrix matrix_from_json(const Json& j, const Prime* p, const std::string& path);

[[nodiscard]] Json to_json(const SkewTuple& a);
[[nodiscard]] SkewTuple skew_from_json(const Json& j, const std::string& path = "");

/// g is emitted as coefficients by x1-degree with a readable "label".
[[nodiscard]] Json to_json(const BlockSpec& spec);
[[nodiscard]] Json to_json(const ClassFunction& rho);
/// Each entry: {"kind": "eps"|"point", "g": [...] or "x1+2*x2", "d", "mult"}.
[[nodiscard]] ClassFunction class_function_from_json(const Json& j, Prime p,
                                                     const std::string& path = "rho");
/// Parses forms such as "x2", "x1+2*x2", "x1^2+x2^2".
[[nodiscard]] HomPoly parse_form(Prime p, const std::string& text);

[[nodiscard]] Json to_json(const Presentation& pres);
[[nodiscard]] Presentation presentation_from_json(const Json& j, const std::string& path = "presentation");

/// {"p", "m", "n", "table"} with table[x][y] = [v_1, ..., v_n].
[[nodiscard]] Json to_json(const Cocycle& mu);
[[nodiscard]] Cocycle cocycle_from_json(const Json& j, const std::string& path = "mu");

/// Orbit count and the smallest member of each orbit.
[[nodiscard]] Json partition_summary(const OrbitPartition& part);

[[nodiscard]] Json to_json(const VerificationReport& report);

}  // namespace pencilform
