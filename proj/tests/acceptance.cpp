// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include "torusfix/affine_model.hpp"
#include "torusfix/classification.hpp"
#include "torusfix/deformability.hpp"
#include "torusfix/errors.hpp"
#include "torusfix/iterates.hpp"
#include "torusfix/oracles.hpp"
#include "torusfix/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

using namespace torusfix;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body, double limit_seconds = 0) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_seconds > 0 && secs > limit_seconds) {
        out.pass = false;
        out.detail += "; exceeded " + std::to_string(limit_seconds) + " s";
    }
    if (!out.pass) ++failures;
    std::printf("%s [%d] %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), out.detail.c_str(), secs);
    std::fflush(stdout);
}

FiberedMapSpec normalized(long b3, long b4, long c1, long c2) {
    return {IntMatrix2::from_rows(1, b3, 0, b4), Integer(c1), Integer(c2)};
}

// Calls fn(f, n) on every (b3, b4, c1, c2) in [-3,3]^4 and n in 1..8.
long for_grid(const std::function<bool(const FiberedMapSpec&, long)>& fn, long& bad) {
    long cases = 0;
    for (long b3 = -3; b3 <= 3; ++b3)
        for (long b4 = -3; b4 <= 3; ++b4)
            for (long c1 = -3; c1 <= 3; ++c1)
                for (long c2 = -3; c2 <= 3; ++c2)
                    for (long n = 1; n <= 8; ++n) {
                        ++cases;
                        if (!fn(normalized(b3, b4, c1, c2), n)) ++bad;
                    }
    return cases;
}

std::string counts(long cases, long bad, const char* what) {
    return std::to_string(cases) + " cases, " + std::to_string(bad) + " " + what;
}

Outcome iterate_oracle() {
    long bad = 0;
    const BundleSpec identity{IntMatrix2::identity()};
    const long cases = for_grid(
        [&](const FiberedMapSpec& f, long n) {
            return power_exponents(f, n) == power_exponents_by_words(f, identity, n);
        },
        bad);
    return {bad == 0, counts(cases, bad, "mismatches")};
}

Outcome key_invariant_identity() {
    long bad = 0;
    const long cases = for_grid(
        [](const FiberedMapSpec& f, long n) {
            const PowerExponents e = power_exponents(f, n);
            Integer s = 0, pw = 1;
            for (long i = 0; i < n; ++i, pw *= f.fiber.m22) s += pw;
            const Integer lhs = e.c1n * (e.b4n - 1) - e.c2n * e.b3n;
            return lhs == n * base_invariant(f) * s && key_invariant(f, n) == lhs;
        },
        bad);
    return {bad == 0, counts(cases, bad, "violations")};
}

Outcome nielsen_oracle() {
    Rng rng(3003);
    long cases = 0, bad = 0, skipped = 0;
    while (cases < 500) {
        const IntMatrix2 B = IntMatrix2::from_rows(uniform(rng, -3, 3), uniform(rng, -3, 3), uniform(rng, -3, 3),
                                                   uniform(rng, -3, 3));
        const long n = uniform(rng, 1, 4);
        const IntMatrix2 M = power(B, n) - IntMatrix2::identity();
        if (sgn(M.det()) == 0) {
            ++skipped;
            continue;
        }
        ++cases;
        if (Integer(static_cast<long>(count_lattice_fixed_points(M))) != nielsen_fiber(B, n)) ++bad;
    }
    return {bad == 0, counts(cases, bad, "mismatches") + ", " + std::to_string(skipped) + " singular draws skipped"};
}

Outcome odd_iterates() {
    Rng rng(4004);
    long deformable = 0, bad = 0;
    for (long i = 0; i < 10000; ++i) {
        const RandomInstance inst = random_classified(rng);
        const ConditionContext ctx = ConditionContext::from(inst.classification, 1);
        if (!deformable_f(ctx).deformable) continue;
        ++deformable;
        for (long n = 1; n <= 15; n += 2)
            if (!deformable_fn(ctx.at(n)).deformable) ++bad;
    }
    return {bad == 0, "10000 instances, " + std::to_string(deformable) + " with f deformable, " +
                          std::to_string(bad) + " odd-n violations"};
}

Outcome divisor_laws() {
    Rng rng(5005);
    long odd_checks = 0, even_checks = 0, bad = 0, exceptions = 0, unmatched = 0;
    for (long i = 0; i < 10000; ++i) {
        const RandomInstance inst = random_classified(rng);
        const ConditionContext ctx = ConditionContext::from(inst.classification, 1);
        for (long n = 1; n <= 20; ++n) {
            if (!deformable_fn(ctx.at(n)).deformable) continue;
            if (n % 2 == 1) {
                for (long k : divisors(n)) {
                    ++odd_checks;
                    if (!deformable_fn(ctx.at(k)).deformable) ++bad;
                }
                continue;
            }
            for (long k = 2; k <= 20; k += 2) {
                ++even_checks;
                const Verdict v = deformable_fn(ctx.at(k));
                if (v.deformable) continue;
                if (!even_propagation_exception(ctx, k)) {
                    ++bad;
                } else {
                    ++exceptions;
                    if (ctx.case_tag != CaseTag::IV || v.clause.find("exception") == std::string::npos) ++unmatched;
                }
            }
        }
    }
    return {bad == 0 && unmatched == 0,
            std::to_string(odd_checks) + " odd and " + std::to_string(even_checks) + " even checks, " +
                std::to_string(bad) + " violations, " + std::to_string(exceptions) + " exception instances (" +
                std::to_string(unmatched) + " unmatched)"};
}

bool fixed_by_closed_form(const AffineParams& p, const PeriodicSolution& s, long n) {
    const LiftedPoint start = s.point.lifted();
    const LiftedPoint end = iterate_closed_form(p, start, n);
    return end.x - start.x == ExactScalar(Rational(s.a)) && end.y - start.y == ExactScalar(Rational(s.b)) &&
           end.t == start.t;
}

Outcome solvability() {
    Rng rng(6006);
    long cases = 0, bad = 0;
    while (cases < 200) {
        AffineParams p;
        p.b3 = uniform(rng, -3, 3);
        p.b4 = uniform(rng, -3, 3);
        p.c1 = uniform(rng, -4, 4);
        p.c2 = uniform(rng, -4, 4);
        if (sgn(base_invariant(p.as_map())) == 0) continue;
        p.eps = random_rational(rng, 10);
        p.delta = random_rational(rng, 10);
        const long n = uniform(rng, 1, 8);
        ++cases;
        const SolveResult r = find_periodic(p, n);
        const bool ok = r.status == SolveStatus::Solution && r.solution->point.t >= ExactScalar(0) &&
                        r.solution->point.t <= ExactScalar(1) && fixed_by_closed_form(p, *r.solution, n);
        if (!ok) ++bad;
    }
    return {bad == 0, counts(cases, bad, "without a verified solution")};
}

// Tallies for one witness family.
struct Family {
    std::string name;
    long built = 0;
    long refused = 0;
    long leaks = 0;  // witness with a periodic point at some n <= 8

    std::string text() const {
        return name + " " + std::to_string(built) + " built/" + std::to_string(refused) + " refused/" +
               std::to_string(leaks) + " leaks";
    }
};

void try_witness(Family& fam, CaseTag tag, const IntMatrix2& A1, const FiberedMapSpec& f) {
    FixedPointFreeWitness w;
    try {
        w = build_main_theorem_g(tag, BundleSpec{A1}, f, 8);
    } catch (const ConstructionUnavailable&) {
        ++fam.refused;
        return;
    }
    ++fam.built;
    for (long n = 1; n <= 8; ++n) {
        if (find_periodic(w.map, n).status != SolveStatus::ProvenEmpty) {
            ++fam.leaks;
            return;
        }
    }
}

Outcome witnesses() {
    Rng rng(7007);
    Family case_i{"case I"}, case_i_id{"case I with A = I"}, unipotent{"II b4=1"}, inv_zero{"II b4!=1 inv=0"},
        minus_one{"II b4=-1 inv=0"};

    for (int i = 0; i < 150; ++i) {
        const FiberedMapSpec f{IntMatrix2::identity(), Integer(uniform(rng, -4, 4)), Integer(uniform(rng, -4, 4))};
        try_witness(case_i, CaseTag::I, random_unimodular(rng), f);
        try_witness(case_i_id, CaseTag::I, IntMatrix2::identity(), f);
    }
    for (int i = 0; i < 150; ++i) {
        // b4 = 1 and b3 c2 = 0; a3 is free because b4 - 1 = 0.
        const long a3 = uniform(rng, -3, 3);
        const bool b3_zero = uniform(rng, 0, 1) == 0;
        const long b3 = b3_zero ? 0 : uniform(rng, -3, 3);
        const long c2 = b3_zero ? uniform(rng, -4, 4) : 0;
        try_witness(unipotent, CaseTag::II, IntMatrix2::from_rows(1, a3, 0, 1),
                    normalized(b3, 1, uniform(rng, -4, 4), c2));
    }
    auto inv_zero_map = [&](long b4) {
        const long b3 = uniform(rng, -3, 3);
        const long g = std::gcd(b3, b4 - 1);
        const long t = uniform(rng, -2, 2);
        return normalized(b3, b4, t * b3 / g, t * (b4 - 1) / g);
    };
    for (int i = 0; i < 150; ++i) {
        long b4 = uniform(rng, -3, 2);
        if (b4 == 1) b4 = 3;
        try_witness(inv_zero, CaseTag::II, IntMatrix2::identity(), inv_zero_map(b4));
        try_witness(minus_one, CaseTag::II, IntMatrix2::identity(), inv_zero_map(-1));
    }

    // Converse: a nonzero invariant with b4 != -1 leaves a periodic point for some n <= 8.
    long converse = 0, converse_bad = 0;
    while (converse < 150) {
        const long b4 = uniform(rng, -3, 3);
        if (b4 == -1) continue;
        const FiberedMapSpec f = normalized(uniform(rng, -3, 3), b4, uniform(rng, -4, 4), uniform(rng, -4, 4));
        if (sgn(base_invariant(f)) == 0) continue;
        ++converse;
        bool refused = false;
        try {
            build_main_theorem_g(CaseTag::II, BundleSpec{IntMatrix2::identity()}, f, 8);
        } catch (const ConditionsNotMet&) {
            refused = true;
        }
        AffineParams p{f.fiber.m12, f.fiber.m22, f.c1, f.c2, ExactScalar::sqrt2(), ExactScalar(0)};
        bool found = false;
        for (long n = 1; n <= 8 && !found; ++n) found = find_periodic(p, n).status == SolveStatus::Solution;
        if (!refused || !found) ++converse_bad;
    }

    bool pass = case_i_id.refused == 0 && case_i_id.built > 0 && converse_bad == 0;
    for (const Family* fam : {&case_i, &case_i_id, &unipotent, &inv_zero, &minus_one})
        pass = pass && fam->leaks == 0 && fam->built > 0;
    std::ostringstream out;
    out << case_i.text() << "; " << case_i_id.text() << "; " << unipotent.text() << "; " << inv_zero.text() << "; "
        << minus_one.text() << "; converse " << converse << " instances, " << converse_bad << " failures";
    return {pass, out.str()};
}

Outcome descent() {
    Rng rng(8008);
    long cases = 0, bad = 0, draws = 0;
    while (cases < 1000) {
        const RandomInstance inst = random_classified(rng);
        const Classification& cls = inst.classification;
        const long n = uniform(rng, 1, 6);
        bool found = false;
        AffineParams p;
        for (int tries = 0; tries < 200 && !found; ++tries) {
            ++draws;
            p = AffineParams::from(cls, random_rational(rng, 4, 2), random_rational(rng, 4, 2));
            found = check_gluing(cls.case_tag, cls.normalized_bundle(), p, n);
        }
        if (!found) continue;
        ++cases;
        for (int k = 0; k < 5; ++k) {
            const ExactScalar x = random_rational(rng, 9, 1), y = random_rational(rng, 9, 1);
            const auto [dx, dy] = descent_defect(p, cls.normalized_bundle(), x, y, n);
            if (!dx.is_integer() || !dy.is_integer()) {
                ++bad;
                break;
            }
        }
    }
    return {bad == 0, counts(cases, bad, "with a non-integral defect") + " (" + std::to_string(draws) + " draws)"};
}

Outcome n_equals_one() {
    Rng rng(9009);
    long bad = 0;
    for (long i = 0; i < 10000; ++i) {
        const RandomInstance inst = random_classified(rng);
        const ConditionContext ctx = ConditionContext::from(inst.classification, 1);
        if (deformable_fn(ctx).deformable != deformable_f(ctx).deformable) ++bad;
    }
    return {bad == 0, counts(10000, bad, "mismatches")};
}

}  // namespace

int main() {
    report(1, "iterate exponents vs word engine", iterate_oracle, 30);
    report(2, "key invariant identity", key_invariant_identity);
    report(3, "Nielsen number vs lattice count", nielsen_oracle, 10);
    report(4, "odd iterates of a deformable f", odd_iterates);
    report(5, "divisor laws", divisor_laws);
    report(6, "solvability with nonzero invariant", solvability, 10);
    report(7, "fixed point free witnesses", witnesses);
    report(8, "descent consistency", descent);
    report(9, "deformable_fn(1) vs deformable_f", n_equals_one);
    return failures;
}
