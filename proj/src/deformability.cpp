#include "torusfix/deformability.hpp"

#include "torusfix/errors.hpp"

namespace torusfix {

namespace {

Integer div_exact_checked(const Integer& num, const Integer& den, const char* what) {
    if (sgn(den) == 0 || mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()) == 0) {
        throw InvalidArgument(std::string(what) + ": " + num.get_str() + " is not divisible by " + den.get_str());
    }
    Integer out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

Integer triangular(long n) { return Integer(n) * (n - 1) / 2; }

// (b4 - 1) / L is odd. L exists here because case V with b4 = 1 is rerouted.
bool ratio_odd(const ConditionContext& ctx) {
    const auto L = ctx.L();
    return is_odd(div_exact_checked(ctx.b4 - 1, *L, "(b4-1)/L"));
}

std::string prefix(const char* kind, CaseTag tag) { return std::string(kind) + "/case-" + to_string(tag); }

Verdict evaluate(const ConditionContext& ctx, long n, const char* kind) {
    const std::string head = prefix(kind, ctx.case_tag);
    const Integer& a3 = ctx.a3;
    const Integer& b3 = ctx.b3;
    const Integer& b4 = ctx.b4;
    const Integer& c1 = ctx.c1;
    const Integer& c2 = ctx.c2;

    switch (ctx.case_tag) {
        case CaseTag::I:
            return {true, head + "/arbitrary"};

        case CaseTag::II:
        case CaseTag::III: {
            if (sgn(c1 * (b4 - 1) - c2 * b3) == 0) return {true, head + "/invariant-zero"};
            if (n % 2 == 0 && b4 == -1) return {true, head + "/b4=-1-even-n"};
            return {false, head + "/invariant-nonzero"};
        }

        case CaseTag::IV: {
            const Integer parity = n * (b4 * (b3 + 1) - 1 - c1 * (b4 - 1) + b3 * c2) - (n - 1) * (b4 - 1);
            if (is_odd(parity)) return {false, head + "/parity-odd"};
            if (is_odd(a3)) {
                const Integer x = n * c1 + triangular(n) * b3 * c2;
                const Integer y = n * c2;
                if (quotient_member(x, y, QuotientLattice::OneTwo_ZeroFour)) {
                    return {false, head + "/a3-odd-exception"};
                }
            } else {
                const Integer x = n * c1 + triangular(n) * b3 * b4 * c2;
                const Integer y = c2 + (n - 1) * b4 * c2;
                if (quotient_member(x, y, QuotientLattice::TwoZero_ZeroTwo)) {
                    return {false, head + "/a3-even-exception"};
                }
            }
            return {true, head + "/parity-even"};
        }

        case CaseTag::V: {
            // b4 = 1 forces b3 = 0 here, i.e. B1 = I: the situation of case I.
            if (b4 == 1) return {true, head + "/b4=1-as-case-I"};
            if (is_even(a3)) {
                const Integer k = c1 - (a3 / 2) * c2 - 1;
                const Integer parity = n * (b4 - 1) * k + (n - 1) * (b4 - 1);
                if (is_odd(parity)) return {false, head + "/a3-even-parity-odd"};
                if (is_odd(n * k + (n - 1)) && ratio_odd(ctx)) return {false, head + "/a3-even-exception"};
                return {true, head + "/a3-even-parity-even"};
            }
            const Integer half = div_exact_checked(b4 - 1, 2, "(b4-1)/2");
            const Integer m = (1 + c2) * (1 + (n - 1) * b4);
            if (is_odd(half * m)) return {false, head + "/a3-odd-parity-odd"};
            if (is_odd(m) && ratio_odd(ctx)) return {false, head + "/a3-odd-exception"};
            return {true, head + "/a3-odd-parity-even"};
        }

        case CaseTag::Unclassifiable:
            break;
    }
    throw InvalidArgument("deformability requires a classified input");
}

}  // namespace

bool quotient_member(const Integer& x, const Integer& y, QuotientLattice lattice) {
    switch (lattice) {
        case QuotientLattice::OneTwo_ZeroFour: return sgn(mod_floor(y - 2 * x, 4)) == 0;
        case QuotientLattice::TwoZero_ZeroTwo: return is_even(x) && is_even(y);
    }
    return false;
}

ConditionContext ConditionContext::from(const Classification& cls, long n) {
    if (!cls.classified()) throw InvalidArgument("cannot build conditions for an unclassified input");
    ConditionContext ctx;
    ctx.case_tag = cls.case_tag;
    ctx.a3 = cls.a3();
    ctx.b3 = cls.b3();
    ctx.b4 = cls.b4();
    ctx.c1 = cls.c1t;
    ctx.c2 = cls.c2t;
    ctx.n = n;
    return ctx;
}

std::optional<Integer> ConditionContext::L() const {
    if (b4 == 1 && sgn(c2) == 0) return std::nullopt;
    return gcd(Integer(b4 - 1), c2);
}

Verdict deformable_f(const ConditionContext& ctx) { return evaluate(ctx, 1, "map"); }

Verdict deformable_fn(const ConditionContext& ctx) {
    if (ctx.n < 1) throw InvalidArgument("iterate count must be positive");
    return evaluate(ctx, ctx.n, "iterate");
}

std::vector<long> divisors(long n) {
    if (n < 1) throw InvalidArgument("divisors of a non-positive integer");
    std::vector<long> small, large;
    for (long k = 1; k * k <= n; ++k) {
        if (n % k != 0) continue;
        small.push_back(k);
        if (k != n / k) large.push_back(n / k);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

ObstructionReport obstruction_report(const Classification& cls, long n) {
    const ConditionContext ctx = ConditionContext::from(cls, n);
    ObstructionReport out;
    for (long k : divisors(n)) {
        DivisorRow row;
        row.k = k;
        row.verdict = deformable_fn(ctx.at(k));
        row.nielsen = abs((power(cls.B1, k) - IntMatrix2::identity()).det());
        out.feasible = out.feasible && row.verdict.deformable;
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::string to_string(Realizability r) {
    switch (r) {
        case Realizability::Realizable: return "Realizable";
        case Realizability::NotRealizable: return "NotRealizable";
        case Realizability::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

Realizability parse_realizability(std::string_view text) {
    if (text == "Realizable") return Realizability::Realizable;
    if (text == "NotRealizable") return Realizability::NotRealizable;
    if (text == "Undetermined") return Realizability::Undetermined;
    throw ParseError("unknown realizability '" + std::string(text) + "'");
}

RealizabilityVerdict realizable_fixed_point_free(const Classification& cls, long n) {
    const ConditionContext ctx = ConditionContext::from(cls, n);
    const std::string head = "realizable/case-" + to_string(cls.case_tag);
    const bool as_case_i = cls.case_tag == CaseTag::I || (cls.case_tag == CaseTag::V && ctx.b4 == 1);
    if (as_case_i) return {Realizability::Realizable, head + "/arbitrary"};

    // If some f^k with k | n cannot lose its fixed points, neither can g^n,
    // since Fix(g^k) is contained in Fix(g^n).
    for (long k : divisors(n)) {
        const Verdict v = deformable_fn(ctx.at(k));
        if (!v.deformable) return {Realizability::NotRealizable, head + "/divisor-" + std::to_string(k) + "-blocked"};
    }

    const bool invariant_zero = sgn(ctx.c1 * (ctx.b4 - 1) - ctx.c2 * ctx.b3) == 0;
    switch (cls.case_tag) {
        case CaseTag::II:
            if (invariant_zero) return {Realizability::Realizable, head + "/invariant-zero"};
            return {Realizability::NotRealizable, head + "/invariant-nonzero"};
        case CaseTag::III:
            return {Realizability::Undetermined, head + "/not-covered"};
        case CaseTag::IV:
        case CaseTag::V:
            if (invariant_zero && n % 2 == 1) return {Realizability::Realizable, head + "/invariant-zero-odd-n"};
            if (invariant_zero && is_odd(ctx.b4) && n % 4 == 2) {
                return {Realizability::Realizable, head + "/invariant-zero-b4-odd-n=4k+2"};
            }
            return {Realizability::Undetermined, head + "/sufficient-conditions-fail"};
        default:
            break;
    }
    throw InvalidArgument("realizability requires a classified input");
}

}  // namespace torusfix
