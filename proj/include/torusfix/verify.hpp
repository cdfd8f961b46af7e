#pragma once

/**
 * @file verify.hpp
 * @brief Randomized cross-checks of the closed forms against the oracles,
 * plus the random instance generators they share with the test suites.
 *
 * Runs are deterministic for a given seed. On the first violation the
 * offending input is shrunk greedily before being reported.
 */

#include "torusfix/affine_model.hpp"
#include "torusfix/classification.hpp"
#include "torusfix/deformability.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace torusfix {

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi);

/// Random unimodular matrix: a short product of elementary matrices,
/// sometimes times a reflection.
IntMatrix2 random_unimodular(Rng& rng);

struct RandomInstance {
    BundleSpec bundle;
    FiberedMapSpec map;
    CaseTag intended = CaseTag::I;
    Classification classification;
};

struct InstanceOptions {
    long a3_range = 4;
    long b_range = 4;
    long c_range = 6;
    double invariant_zero_bias = 0.5;
    bool include_case_i = true;
    bool conjugate = true;
};

/// Builds a normal form of a random case, then hides it behind a random
/// unimodular change of basis. Throws InternalMismatch if classify does not
/// recover the intended case.
RandomInstance random_classified(Rng& rng, const InstanceOptions& opts = {});

/// Random exact rational p/q with |p/q| < bound and 1 <= q <= max_den.
Rational random_rational(Rng& rng, long max_den, long bound = 3);

/// Test-only faults, used to check that the harness notices wrong formulas.
enum class Fault {
    None,
    PerturbIterateC1,  // adds 1 to c1n whenever n >= 3 and c2 != 0
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    long trials = 100;
    Fault fault = Fault::None;
};

struct SuiteResult {
    std::string name;
    long checks = 0;
};

struct Counterexample {
    std::string suite;
    std::string detail;
    nlohmann::json input;  // shrunk failing input
};

struct VerifySummary {
    std::uint64_t seed = 0;
    long trials = 0;
    std::vector<SuiteResult> suites;
    std::optional<Counterexample> failure;

    bool passed() const { return !failure.has_value(); }
    long total_checks() const;
};

VerifySummary run_verification(const VerifyOptions& opts);

nlohmann::json to_json(const VerifySummary& summary);
std::string render_text(const VerifySummary& summary);

/// Even-n propagation exceptions for case IV: a3 odd and k = 0 mod 4, or
/// a3 even, k = 0 mod 4 and b3 b4 c2 odd.
bool even_propagation_exception(const ConditionContext& ctx, long k);

}  // namespace torusfix
