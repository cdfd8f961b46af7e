#include "torusfix/verify.hpp"

#include "torusfix/errors.hpp"
#include "torusfix/iterates.hpp"
#include "torusfix/oracles.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace torusfix {

using nlohmann::json;

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

IntMatrix2 random_unimodular(Rng& rng) {
    IntMatrix2 out = IntMatrix2::identity();
    const long factors = uniform(rng, 1, 3);
    for (long i = 0; i < factors; ++i) {
        const long k = uniform(rng, -2, 2);
        out = out * (uniform(rng, 0, 1) == 0 ? IntMatrix2::from_rows(1, k, 0, 1) : IntMatrix2::from_rows(1, 0, k, 1));
    }
    if (uniform(rng, 0, 3) == 0) out = out * IntMatrix2::from_rows(0, 1, 1, 0);
    if (uniform(rng, 0, 3) == 0) out = out * IntMatrix2::from_rows(-1, 0, 0, -1);
    return out;
}

Rational random_rational(Rng& rng, long max_den, long bound) {
    const long q = uniform(rng, 1, std::max(1L, max_den));
    const long p = uniform(rng, -(bound * q - 1), bound * q - 1);
    return Rational(Integer(p), Integer(q));
}

namespace {

long nonzero(Rng& rng, long range) {
    long v = 0;
    while (v == 0) v = uniform(rng, -range, range);
    return v;
}

long not_one(Rng& rng, long range) {
    long v = 1;
    while (v == 1) v = uniform(rng, -range, range);
    return v;
}

// Upper triangular A1, B1 satisfying the side condition of the case, B1 != I.
void normal_form(Rng& rng, CaseTag tag, const InstanceOptions& o, IntMatrix2& A1, IntMatrix2& B1) {
    long a3 = 0, b3 = 0, b4 = 1;
    long alpha = 1, beta = 1;
    switch (tag) {
        case CaseTag::II:
        case CaseTag::IV:
            alpha = beta = tag == CaseTag::II ? 1 : -1;
            b4 = uniform(rng, -o.b_range, o.b_range);
            if (b4 == 1) {
                a3 = uniform(rng, -o.a3_range, o.a3_range);
                b3 = nonzero(rng, o.b_range);
            } else {
                b3 = uniform(rng, -o.b_range, o.b_range);
            }
            break;
        case CaseTag::III:
        case CaseTag::V: {
            alpha = tag == CaseTag::III ? 1 : -1;
            beta = -alpha;
            b4 = not_one(rng, o.b_range);
            do {
                a3 = uniform(rng, -o.a3_range, o.a3_range);
            } while ((a3 * (b4 - 1)) % 2 != 0);
            b3 = (tag == CaseTag::III ? -1 : 1) * a3 * (b4 - 1) / 2;
            break;
        }
        default:
            throw InvalidArgument("normal_form needs one of the cases II-V");
    }
    A1 = IntMatrix2::from_rows(alpha, a3, 0, beta);
    B1 = IntMatrix2::from_rows(1, b3, 0, b4);
}

}  // namespace

RandomInstance random_classified(Rng& rng, const InstanceOptions& opts) {
    static const CaseTag kCases[] = {CaseTag::I, CaseTag::II, CaseTag::III, CaseTag::IV, CaseTag::V};
    RandomInstance inst;
    inst.intended = kCases[uniform(rng, opts.include_case_i ? 0 : 1, 4)];

    IntMatrix2 A1, B1;
    IntVec2 c{uniform(rng, -opts.c_range, opts.c_range), uniform(rng, -opts.c_range, opts.c_range)};
    if (inst.intended == CaseTag::I) {
        A1 = random_unimodular(rng);
    } else {
        normal_form(rng, inst.intended, opts, A1, B1);
        if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < opts.invariant_zero_bias) {
            const Integer g = gcd(B1.m12, Integer(B1.m22 - 1));
            const Integer t = uniform(rng, -2, 2);
            c = {t * B1.m12 / g, t * (B1.m22 - 1) / g};
        }
    }

    if (opts.conjugate) {
        const IntMatrix2 Q = random_unimodular(rng);
        const IntMatrix2 Qi = inverse_unimodular(Q);
        A1 = Qi * A1 * Q;
        B1 = Qi * B1 * Q;
        c = Qi * c;
    }
    inst.bundle = {A1};
    inst.map = {B1, c.x, c.y};
    inst.classification = classify(inst.bundle, inst.map);
    if (inst.classification.case_tag != inst.intended) {
        throw InternalMismatch("instance built as case " + to_string(inst.intended) + " classified as " +
                               to_string(inst.classification.case_tag) + " (A=" + A1.to_string() +
                               ", B=" + B1.to_string() + ")");
    }
    return inst;
}

bool even_propagation_exception(const ConditionContext& ctx, long k) {
    if (ctx.case_tag != CaseTag::IV || k % 4 != 0) return false;
    if (is_odd(ctx.a3)) return true;
    return is_odd(ctx.b3 * ctx.b4 * ctx.c2);
}

long VerifySummary::total_checks() const {
    long total = 0;
    for (const auto& s : suites) total += s.checks;
    return total;
}

namespace {

using Failure = std::optional<std::string>;

// Integer-vector input with named fields and per-field lower bounds, so a
// failing input can be shrunk toward zero one coordinate at a time.
struct Fields {
    std::vector<std::string> names;
    std::vector<long> values;
    std::vector<long> floors;

    json to_json() const {
        json out = json::object();
        for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = values[i];
        return out;
    }
};

using Check = std::function<Failure(const std::vector<long>&)>;

Failure guarded(const Check& check, const std::vector<long>& v) {
    try {
        return check(v);
    } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
    }
}

std::vector<long> shrink_candidates(long value, long floor) {
    std::vector<long> out;
    const long target = std::max(0L, floor);
    auto push = [&](long c) {
        if (c != value && c >= floor && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    };
    push(target);
    push(value / 2);
    if (value > target) push(value - 1);
    if (value < target) push(value + 1);
    if (value < 0) push(-value);
    return out;
}

// Greedy: keep taking the first candidate that still fails until none does.
std::pair<Fields, std::string> shrink(Fields input, std::string message, const Check& check) {
    bool progress = true;
    int budget = 500;
    while (progress && budget-- > 0) {
        progress = false;
        for (std::size_t i = 0; i < input.values.size() && !progress; ++i) {
            for (long c : shrink_candidates(input.values[i], input.floors[i])) {
                std::vector<long> trial = input.values;
                trial[i] = c;
                if (auto f = guarded(check, trial)) {
                    input.values = trial;
                    message = *f;
                    progress = true;
                    break;
                }
            }
        }
    }
    return {input, message};
}

struct Runner {
    const VerifyOptions& opts;
    Rng rng;
    VerifySummary summary;

    explicit Runner(const VerifyOptions& o) : opts(o), rng(o.seed) {
        summary.seed = o.seed;
        summary.trials = o.trials;
    }

    bool failed() const { return summary.failure.has_value(); }

    void fail(const std::string& suite, const std::string& detail, json input) {
        summary.failure = Counterexample{suite, detail, std::move(input)};
    }

    // One trial of a shrinkable suite.
    bool field_trial(SuiteResult& suite, Fields input, const Check& check, long checks_per_trial) {
        suite.checks += checks_per_trial;
        if (auto f = guarded(check, input.values)) {
            auto [small, message] = shrink(std::move(input), *f, check);
            fail(suite.name, message, small.to_json());
            return false;
        }
        return true;
    }
};

PowerExponents exponents_under_test(const FiberedMapSpec& f, long n, Fault fault) {
    PowerExponents e = power_exponents(f, n);
    if (fault == Fault::PerturbIterateC1 && n >= 3 && sgn(f.c2) != 0) e.c1n += 1;
    return e;
}

FiberedMapSpec normalized(long b3, long b4, long c1, long c2) {
    return {IntMatrix2::from_rows(1, b3, 0, b4), Integer(c1), Integer(c2)};
}

std::string describe(const PowerExponents& e) {
    return "(b3n, b4n, c1n, c2n) = (" + e.b3n.get_str() + ", " + e.b4n.get_str() + ", " + e.c1n.get_str() + ", " +
           e.c2n.get_str() + ")";
}

Fields exponent_fields(Rng& rng) {
    return {{"b3", "b4", "c1", "c2", "n"},
            {uniform(rng, -3, 3), uniform(rng, -3, 3), uniform(rng, -4, 4), uniform(rng, -4, 4), uniform(rng, 1, 8)},
            {-1000, -1000, -1000, -1000, 1}};
}

void suite_iterate_exponents(Runner& r) {
    SuiteResult suite{"iterate-exponents-vs-words", 0};
    const Check check = [&](const std::vector<long>& v) -> Failure {
        const FiberedMapSpec f = normalized(v[0], v[1], v[2], v[3]);
        const long n = v[4];
        const PowerExponents closed = exponents_under_test(f, n, r.opts.fault);
        const PowerExponents words = power_exponents_by_words(f, BundleSpec{IntMatrix2::identity()}, n);
        if (closed != words) return "closed form " + describe(closed) + ", word engine " + describe(words);
        if (geometric_sums(f.fiber.m22, n) != geometric_sums_direct(f.fiber.m22, n)) {
            return std::string("closed-form geometric sums differ from direct summation");
        }
        return std::nullopt;
    };
    for (long i = 0; i < r.opts.trials && !r.failed(); ++i) r.field_trial(suite, exponent_fields(r.rng), check, 2);
    r.summary.suites.push_back(suite);
}

void suite_key_invariant(Runner& r) {
    SuiteResult suite{"key-invariant", 0};
    const Check check = [&](const std::vector<long>& v) -> Failure {
        const FiberedMapSpec f = normalized(v[0], v[1], v[2], v[3]);
        const long n = v[4];
        const PowerExponents e = exponents_under_test(f, n, r.opts.fault);
        const Integer direct = e.c1n * (e.b4n - 1) - e.c2n * e.b3n;
        const Integer factored = n * base_invariant(f) * geometric_sums_direct(f.fiber.m22, n).s;
        if (direct != factored) {
            return "c1n (b4n - 1) - c2n b3n = " + direct.get_str() + " but n * inv * S = " + factored.get_str();
        }
        if (key_invariant(f, n) != factored) return std::string("key_invariant disagrees with n * inv * S");
        return std::nullopt;
    };
    for (long i = 0; i < r.opts.trials && !r.failed(); ++i) r.field_trial(suite, exponent_fields(r.rng), check, 2);
    r.summary.suites.push_back(suite);
}

void suite_nielsen(Runner& r) {
    SuiteResult suite{"nielsen-vs-lattice-count", 0};
    const Check check = [](const std::vector<long>& v) -> Failure {
        const IntMatrix2 B = IntMatrix2::from_rows(v[0], v[1], v[2], v[3]);
        const long n = v[4];
        const IntMatrix2 M = power(B, n) - IntMatrix2::identity();
        if (sgn(M.det()) == 0) return std::nullopt;
        const Integer counted = count_lattice_fixed_points(M);
        const Integer nielsen = nielsen_fiber(B, n);
        if (counted != nielsen) {
            return "lattice count " + counted.get_str() + " but |det(B^n - I)| = " + nielsen.get_str();
        }
        IntMatrix2 sum = IntMatrix2::identity() - IntMatrix2::identity();
        for (long i = 0; i < n; ++i) sum = sum + power(B, i);
        if (M.det() != (B - IntMatrix2::identity()).det() * sum.det()) {
            return std::string("det(B^n - I) != det(B - I) det(sum B^i)");
        }
        return std::nullopt;
    };
    for (long i = 0; i < r.opts.trials && !r.failed(); ++i) {
        Fields in{{"b1", "b3", "b2", "b4", "n"},
                  {uniform(r.rng, -3, 3), uniform(r.rng, -3, 3), uniform(r.rng, -3, 3), uniform(r.rng, -3, 3),
                   uniform(r.rng, 1, 4)},
                  {-3, -3, -3, -3, 1}};
        r.field_trial(suite, in, check, 2);
    }
    r.summary.suites.push_back(suite);
}

void suite_quotient(Runner& r) {
    SuiteResult suite{"quotient-vs-smith-form", 0};
    const IntMatrix2 g1 = IntMatrix2::from_rows(1, 0, 2, 4);  // columns (1,2), (0,4)
    const IntMatrix2 g2 = IntMatrix2::from_rows(2, 0, 0, 2);
    const Check check = [&](const std::vector<long>& v) -> Failure {
        const Integer x = v[0], y = v[1];
        if (quotient_member(x, y, QuotientLattice::OneTwo_ZeroFour) != in_column_lattice(g1, x, y)) {
            return std::string("membership in <(1,2),(0,4)> disagrees with the Smith form");
        }
        if (quotient_member(x, y, QuotientLattice::TwoZero_ZeroTwo) != in_column_lattice(g2, x, y)) {
            return std::string("membership in <(2,0),(0,2)> disagrees with the Smith form");
        }
        return std::nullopt;
    };
    for (long i = 0; i < r.opts.trials && !r.failed(); ++i) {
        Fields in{{"x", "y"}, {uniform(r.rng, -20, 20), uniform(r.rng, -20, 20)}, {-1000, -1000}};
        r.field_trial(suite, in, check, 2);
    }
    r.summary.suites.push_back(suite);
}

json instance_json(const RandomInstance& inst, long n) {
    const auto& A = inst.bundle.gluing;
    const auto& B = inst.map.fiber;
    return {{"A", {{A.m11.get_si(), A.m12.get_si()}, {A.m21.get_si(), A.m22.get_si()}}},
            {"B", {{B.m11.get_si(), B.m12.get_si()}, {B.m21.get_si(), B.m22.get_si()}}},
            {"c1", inst.map.c1.get_si()},
            {"c2", inst.map.c2.get_si()},
            {"n", n}};
}

void suite_divisor_laws(Runner& r) {
    SuiteResult suite{"deformability-laws", 0};
    for (long i = 0; i < r.opts.trials && !r.failed(); ++i) {
        RandomInstance inst;
        try {
            inst = random_classified(r.rng);
        } catch (const std::exception& e) {
            r.fail(suite.name, std::string("instance generator: ") + e.what(), json::object());
            break;
        }
        const ConditionContext ctx = ConditionContext::from(inst.classification, 1);
        auto bad = [&](const std::string& detail, long n) { r.fail(suite.name, detail, instance_json(inst, n)); };

        ++suite.checks;
        const Verdict f = deformable_f(ctx);
        if (deformable_fn(ctx.at(1)).deformable != f.deformable) {
            bad("deformable_fn at n = 1 disagrees with deformable_f", 1);
            break;
        }

        if (f.deformable) {
            for (long n = 1; n <= 15; n += 2) {
                ++suite.checks;
                if (!deformable_fn(ctx.at(n)).deformable) {
                    bad("f deformable but f^n is not for odd n", n);
                    break;
                }
            }
            if (r.failed()) break;
        }

        const long odd_n = 2 * uniform(r.rng, 0, 7) + 1;
        if (deformable_fn(ctx.at(odd_n)).deformable) {
            for (long k : divisors(odd_n)) {
                ++suite.checks;
                if (!deformable_fn(ctx.at(k)).deformable) {
                    bad("f^n deformable but f^" + std::to_string(k) + " is not, k | n odd", odd_n);
                    break;
                }
            }
            if (r.failed()) break;
        }

        const long even_n = 2 * uniform(r.rng, 1, 10);
        if (deformable_fn(ctx.at(even_n)).deformable) {
            for (long k = 2; k <= 20; k += 2) {
                ++suite.checks;
                const Verdict v = deformable_fn(ctx.at(k));
                if (v.deformable) continue;
                if (!even_propagation_exception(ctx, k)) {
                    bad("f^n deformable but f^" + std::to_string(k) + " is not, both even (" + v.clause + ")", even_n);
                    break;
                }
                if (v.clause.find("exception") == std::string::npos) {
                    bad("even-k failure outside an exception clause: " + v.clause, even_n);
                    break;
                }
            }
        }
    }
    r.summary.suites.push_back(suite);
}

Fields solver_fields(Rng& rng) {
    const long q1 = uniform(rng, 1, 10), q2 = uniform(rng, 1, 10);
    return {{"b3", "b4", "c1", "c2", "eps_num", "eps_den", "delta_num", "delta_den", "n"},
            {uniform(rng, -3, 3), uniform(rng, -3, 3), uniform(rng, -4, 4), uniform(rng, -4, 4),
             uniform(rng, -3 * q1, 3 * q1), q1, uniform(rng, -3 * q2, 3 * q2), q2, uniform(rng, 1, 4)},
            {-1000, -1000, -1000, -1000, -1000, 1, -1000, 1, 1}};
}

void suite_solver(Runner& r) {
    SuiteResult suite{"solver-substitution", 0};
    const Check check = [](const std::vector<long>& v) -> Failure {
        AffineParams p;
        p.b3 = v[0];
        p.b4 = v[1];
        p.c1 = v[2];
        p.c2 = v[3];
        p.eps = Rational(Integer(v[4]), Integer(v[5]));
        p.delta = Rational(Integer(v[6]), Integer(v[7]));
        const long n = v[8];
        const SolveResult res = find_periodic(p, n);
        const SolveResult scan = window_scan(p, n, 12);
        if (res.status == SolveStatus::Solution) {
            LiftedPoint q = res.solution->point.lifted();
            for (long i = 0; i < n; ++i) q = one_step(p, q);
            const LiftedPoint start = res.solution->point.lifted();
            if (!(q.x - start.x).is_integer() || !(q.y - start.y).is_integer() || q.t != start.t) {
                return std::string("reported solution is not fixed by n repeated steps");
            }
        } else if (scan.status == SolveStatus::Solution) {
            return "solver says " + to_string(res.status) + " but the window scan found a point";
        }
        if (sgn(base_invariant(p.as_map())) != 0 && res.status != SolveStatus::Solution) {
            return std::string("nonzero invariant but no periodic point");
        }
        return std::nullopt;
    };
    for (long i = 0; i < r.opts.trials && !r.failed(); ++i) r.field_trial(suite, solver_fields(r.rng), check, 2);
    r.summary.suites.push_back(suite);
}

void suite_descent(Runner& r) {
    SuiteResult suite{"descent", 0};
    for (long i = 0; i < r.opts.trials && !r.failed(); ++i) {
        RandomInstance inst;
        try {
            inst = random_classified(r.rng);
        } catch (const std::exception& e) {
            r.fail(suite.name, std::string("instance generator: ") + e.what(), json::object());
            break;
        }
        const Classification& cls = inst.classification;
        const long n = uniform(r.rng, 1, 4);
        const AffineParams p =
            AffineParams::from(cls, random_rational(r.rng, 4), random_rational(r.rng, 4));
        const bool glues = check_gluing(cls.case_tag, cls.normalized_bundle(), p, n);
        const ExactScalar x = random_rational(r.rng, 7, 1), y = random_rational(r.rng, 7, 1);
        const auto [dx, dy] = descent_defect(p, cls.normalized_bundle(), x, y, n);
        ++suite.checks;
        if (glues != (dx.is_integer() && dy.is_integer())) {
            json in = instance_json(inst, n);
            in["eps"] = p.eps.to_string();
            in["delta"] = p.delta.to_string();
            r.fail(suite.name,
                   std::string(glues ? "gluing check passed" : "gluing check failed") + " but the defect is (" +
                       dx.to_string() + ", " + dy.to_string() + ")",
                   in);
        }
    }
    r.summary.suites.push_back(suite);
}

}  // namespace

VerifySummary run_verification(const VerifyOptions& opts) {
    if (opts.trials < 0) throw InvalidArgument("trials must be non-negative");
    Runner r(opts);
    const std::function<void(Runner&)> suites[] = {suite_iterate_exponents, suite_key_invariant, suite_nielsen,
                                                   suite_quotient,          suite_divisor_laws,  suite_solver,
                                                   suite_descent};
    for (const auto& suite : suites) {
        if (r.failed()) break;
        suite(r);
    }
    return r.summary;
}

json to_json(const VerifySummary& summary) {
    json out{{"schema", "torusfix.verify/1"},
             {"seed", summary.seed},
             {"trials", summary.trials},
             {"passed", summary.passed()},
             {"total_checks", summary.total_checks()}};
    json suites = json::array();
    for (const auto& s : summary.suites) suites.push_back({{"name", s.name}, {"checks", s.checks}});
    out["suites"] = suites;
    if (summary.failure) {
        out["counterexample"] = {{"suite", summary.failure->suite},
                                 {"detail", summary.failure->detail},
                                 {"input", summary.failure->input}};
    } else {
        out["counterexample"] = nullptr;
    }
    return out;
}

std::string render_text(const VerifySummary& summary) {
    std::ostringstream os;
    os << "seed " << summary.seed << ", " << summary.trials << " trials per suite\n";
    for (const auto& s : summary.suites) os << "  " << s.name << ": " << s.checks << " checks\n";
    if (summary.failure) {
        os << "FAILED in " << summary.failure->suite << ": " << summary.failure->detail << "\n";
        os << "  input: " << summary.failure->input.dump() << "\n";
    } else {
        os << "all " << summary.total_checks() << " checks passed\n";
    }
    return os.str();
}

}  // namespace torusfix
