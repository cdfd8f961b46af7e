#pragma once

/**
 * @file report.hpp
 * @brief The analyze and solve pipelines and their JSON / text reports.
 *
 * JSON reports carry a "schema" string ("torusfix.analyze/1",
 * "torusfix.solve/1"). Integers are JSON numbers when they fit in 64 bits
 * and decimal strings otherwise; exact scalars are strings.
 */

#include "torusfix/affine_model.hpp"
#include "torusfix/deformability.hpp"
#include "torusfix/problem.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace torusfix {

inline constexpr const char* kAnalyzeSchema = "torusfix.analyze/1";
inline constexpr const char* kSolveSchema = "torusfix.solve/1";

struct WitnessSummary {
    std::string construction;
    ExactScalar eps;
    ExactScalar delta;
    std::optional<long> valid_through;
    int pieces = 1;

    friend bool operator==(const WitnessSummary&, const WitnessSummary&) = default;
};

struct AnalyzeReport {
    ProblemSpec input;
    bool valid = false;
    std::string violation;
    Classification classification;
    ObstructionReport obstruction;
    std::optional<RealizabilityVerdict> realizable;  // absent when unclassifiable
    std::optional<WitnessSummary> witness;
    std::string witness_note;  // why no witness is attached, if relevant

    bool ok() const { return classification.classified(); }

    friend bool operator==(const AnalyzeReport&, const AnalyzeReport&) = default;
};

/// validate_hom -> classify -> obstruction table -> realizability -> witness.
AnalyzeReport analyze(const ProblemSpec& spec);

nlohmann::json to_json(const AnalyzeReport& report);
AnalyzeReport analyze_report_from_json(const nlohmann::json& j);
std::string render_text(const AnalyzeReport& report);

struct SolveReport {
    ProblemSpec input;
    Classification classification;
    std::string params_source;  // "input", "construction" or "default"
    PiecewiseMap map;
    bool gluing_ok = false;
    SolveResult result;
    std::optional<SolveResult> window_check;  // brute-force cross-check of a ProvenEmpty verdict

    friend bool operator==(const SolveReport&, const SolveReport&) = default;
};

/// Chooses (eps, delta): the input values if given, else the fixed point
/// free construction for cases I and II when available, else a simple
/// gluing-valid default. Throws GluingViolation if the map does not descend
/// (checked at iterate 1 and iterate n), InvalidArgument if unclassifiable.
SolveReport solve(const ProblemSpec& spec);

nlohmann::json to_json(const SolveReport& report);
SolveReport solve_report_from_json(const nlohmann::json& j);
std::string render_text(const SolveReport& report);

nlohmann::json classification_json(const Classification& cls);
Classification classification_from_json(const nlohmann::json& j);
nlohmann::json solve_result_json(const SolveResult& r);
SolveResult solve_result_from_json(const nlohmann::json& j);

}  // namespace torusfix
