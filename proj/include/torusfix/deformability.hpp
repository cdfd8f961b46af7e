#pragma once

/**
 * @file deformability.hpp
 * @brief Deciding when f, or its iterate f^n, is fiberwise homotopic to a
 * fixed point free map, plus the divisor obstruction and realizability.
 *
 * All conditions are evaluated on the normalized data of a Classification
 * (a3 from A1; b3, b4 from B1; the transformed translations c1t, c2t).
 * Parities use mathematical residues, so negative values are fine.
 */

#include "torusfix/classification.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torusfix {

enum class QuotientLattice {
    OneTwo_ZeroFour,  // <(1,2), (0,4)>
    TwoZero_ZeroTwo,  // <(2,0), (0,2)>
};

/// True iff (x, y) lies in the sublattice, i.e. is zero in Z^2 / lattice.
bool quotient_member(const Integer& x, const Integer& y, QuotientLattice lattice);

struct ConditionContext {
    CaseTag case_tag = CaseTag::I;
    Integer a3{0};
    Integer b3{0};
    Integer b4{1};
    Integer c1{0};
    Integer c2{0};
    long n = 1;

    static ConditionContext from(const Classification& cls, long n);
    /// gcd(b4 - 1, c2); nullopt when both vanish.
    std::optional<Integer> L() const;
    ConditionContext at(long k) const {
        ConditionContext out = *this;
        out.n = k;
        return out;
    }
};

struct Verdict {
    bool deformable = false;
    std::string clause;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Deformability of f itself (ctx.n is ignored).
Verdict deformable_f(const ConditionContext& ctx);
/// Deformability of f^n for n = ctx.n.
Verdict deformable_fn(const ConditionContext& ctx);

struct DivisorRow {
    long k = 1;
    Verdict verdict;
    Integer nielsen{0};  // |det(B^k - I)|

    friend bool operator==(const DivisorRow&, const DivisorRow&) = default;
};

struct ObstructionReport {
    std::vector<DivisorRow> rows;  // ascending k, every divisor of n
    bool feasible = true;          // false if some f^k, k | n, is not deformable

    friend bool operator==(const ObstructionReport&, const ObstructionReport&) = default;
};

std::vector<long> divisors(long n);

/// Requires a classified input; throws InvalidArgument otherwise.
ObstructionReport obstruction_report(const Classification& cls, long n);

enum class Realizability { Realizable, NotRealizable, Undetermined };

std::string to_string(Realizability r);
Realizability parse_realizability(std::string_view text);

struct RealizabilityVerdict {
    Realizability value = Realizability::Undetermined;
    std::string clause;

    friend bool operator==(const RealizabilityVerdict&, const RealizabilityVerdict&) = default;
};

/// Is there g fiberwise homotopic to f with g^n fixed point free?
RealizabilityVerdict realizable_fixed_point_free(const Classification& cls, long n);

}  // namespace torusfix
