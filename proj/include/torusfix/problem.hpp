#pragma once

/**
 * @file problem.hpp
 * @brief Problem descriptions read from JSON or a small TOML subset.
 *
 * Matrices use the column-action layout: "A": [[a1, a3], [a2, a4]] means
 * A(x, y) = (a1 x + a3 y, a2 x + a4 y). The keyed form
 * {"a1": .., "a2": .., "a3": .., "a4": ..} (b1..b4 for B) is also accepted.
 * Integers may be given as numbers or as decimal strings; eps and delta are
 * exact-scalar strings such as "1/2" or "1/3+2*sqrt2".
 *
 * Example (TOML):
 *
 *   A = [[1, 1], [0, 1]]
 *   B = [[1, 2], [0, 1]]
 *   c1 = 1
 *   c2 = 1
 *   n = 6
 *   eps = "sqrt2"
 */

#include "torusfix/exact_scalar.hpp"
#include "torusfix/group_words.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace torusfix {

struct ProblemSpec {
    IntMatrix2 A;
    IntMatrix2 B;
    Integer c1{0};
    Integer c2{0};
    long n = 1;
    std::optional<ExactScalar> eps;
    std::optional<ExactScalar> delta;
    std::optional<long> search_bound;

    BundleSpec bundle() const { return {A}; }
    FiberedMapSpec map() const { return {B, c1, c2}; }

    friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// Throws ParseError naming the offending field.
ProblemSpec problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const ProblemSpec& spec);

ProblemSpec parse_problem_json(std::string_view text);
/// Supports comments, `key = value`, integers, strings, (nested) arrays,
/// inline tables and [A] / [B] sections. Errors carry the line number.
ProblemSpec parse_problem_toml(std::string_view text);
/// Dispatches on the extension (.json, .toml); otherwise sniffs for '{'.
ProblemSpec load_problem(const std::string& path);

/// TOML subset to JSON, exposed for testing.
nlohmann::json toml_to_json(std::string_view text);

/// JSON helpers shared with the report module.
Integer json_integer(const nlohmann::json& j, const std::string& field);
nlohmann::json integer_json(const Integer& v);
IntMatrix2 json_matrix(const nlohmann::json& j, const std::string& field, char prefix);
nlohmann::json matrix_json(const IntMatrix2& m);

}  // namespace torusfix
