#pragma once

/**
 * @file classification.hpp
 * @brief Sorting a (bundle, map) pair into the five normal-form cases.
 *
 * When B != I, the fixed line of B is spanned by a primitive v, and A maps
 * that line to itself. Changing the fiber basis to (v, w) makes both A and B
 * upper triangular:
 *
 *   case   A1 diagonal   side condition on a3, b3, b4
 *   I      (B = I)       none
 *   II     ( 1,  1)      a3 (b4 - 1) = 0
 *   III    ( 1, -1)      a3 (b4 - 1) = -2 b3
 *   IV     (-1, -1)      a3 (b4 - 1) = 0
 *   V      (-1,  1)      a3 (b4 - 1) = 2 b3
 */

#include "torusfix/group_words.hpp"

#include <string>
#include <string_view>

namespace torusfix {

enum class CaseTag { I, II, III, IV, V, Unclassifiable };

std::string to_string(CaseTag tag);
/// Accepts "I".."V" and "Unclassifiable"; throws ParseError.
CaseTag parse_case_tag(std::string_view text);

struct Classification {
    CaseTag case_tag = CaseTag::Unclassifiable;
    IntMatrix2 P;   // unimodular, P v = e1 and P w = e2
    IntMatrix2 A1;  // P A P^-1
    IntMatrix2 B1;  // P B P^-1
    Integer c1t{0};
    Integer c2t{0};
    std::string reason;  // diagnostic when Unclassifiable

    bool classified() const { return case_tag != CaseTag::Unclassifiable; }

    const Integer& a3() const { return A1.m12; }
    const Integer& b3() const { return B1.m12; }
    const Integer& b4() const { return B1.m22; }

    /// The map in the adapted basis: fiber matrix B1 and translations (c1t, c2t).
    FiberedMapSpec normalized_map() const { return {B1, c1t, c2t}; }
    BundleSpec normalized_bundle() const { return {A1}; }

    friend bool operator==(const Classification&, const Classification&) = default;
};

/// Primitive v with B v = v, first nonzero entry positive.
/// Throws IdentityMatrix if B = I, NoEigenvector if det(B - I) != 0.
IntVec2 eigenvector_one(const IntMatrix2& B);

/// Second basis vector w with det[v | w] = +1. Uses w = A v when A v is
/// independent of v (negated if needed to fix the sign), otherwise the
/// extended-gcd completion of v.
IntVec2 complete_basis(const IntVec2& v, const BundleSpec& bundle, const IntMatrix2& B);

/// Never throws for integer input: failures are reported through
/// case_tag = Unclassifiable and reason.
Classification classify(const BundleSpec& bundle, const FiberedMapSpec& f);

}  // namespace torusfix
