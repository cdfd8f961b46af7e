#include "torusfix/affine_model.hpp"

#include "torusfix/errors.hpp"

#include <algorithm>
#include <numeric>

namespace torusfix {

namespace {

void require_positive(long n) {
    if (n < 1) throw InvalidArgument("iterate count must be positive, got " + std::to_string(n));
}

ExactScalar S(const Integer& v) { return ExactScalar(v); }

bool in_range(const ExactScalar& t, const TInterval& r) { return r.lo <= t && t <= r.hi; }

bool is_unit_interval(const TInterval& r) { return r.lo == ExactScalar(0) && r.hi == ExactScalar(1); }

std::string reason_for(const ExactScalar& forced) {
    if (!forced.is_rational()) {
        return "the system forces " + forced.to_string() + ", an irrational number, to be an integer";
    }
    return "the system forces " + forced.to_string() + " to be an integer";
}

// Integers m with lo <= slope * m + offset <= hi, slope != 0.
std::optional<Integer> integer_in_range(const ExactScalar& slope, const ExactScalar& offset, const TInterval& r) {
    ExactScalar from = (r.lo - offset) / slope;
    ExactScalar to = (r.hi - offset) / slope;
    if (slope.sign() < 0) std::swap(from, to);
    const Integer m_min = from.ceil();
    const Integer m_max = to.floor();
    if (m_min > m_max) return std::nullopt;
    if (sgn(m_min) > 0) return m_min;
    if (sgn(m_max) < 0) return m_max;
    return Integer(0);
}

// Substitutes (0, y mod 1, t) into the closed form and reads off the lifts.
SolveResult finalize(const AffineParams& p, long n, const ExactScalar& y, const ExactScalar& t, bool degenerate,
                     const std::string& how) {
    const BundlePoint point = BundlePoint::canonical(ExactScalar(0), y, t);
    const LiftedPoint image = iterate_closed_form(p, point.lifted(), n);
    const ExactScalar da = image.x - point.x;
    const ExactScalar db = image.y - point.y;
    if (!da.is_integer() || !db.is_integer() || image.t != point.t) {
        throw InternalMismatch("candidate periodic point (" + point.x.to_string() + ", " + point.y.to_string() +
                               ", " + point.t.to_string() + ") leaves residual (" + da.to_string() + ", " +
                               db.to_string() + ")");
    }
    SolveResult out;
    out.status = SolveStatus::Solution;
    out.solution = PeriodicSolution{point, da.rat().numerator(), db.rat().numerator(), n, degenerate};
    out.reason = how;
    return out;
}

SolveResult proven_empty(std::string reason) {
    SolveResult out;
    out.status = SolveStatus::ProvenEmpty;
    out.reason = std::move(reason);
    return out;
}

// For a nonzero invariant the t of the solution with lifts
// (a, b) = (-n c1 d, -n c2 d) is rho - d, rho = (b3 delta - (b4-1) eps) / inv.
std::optional<SolveResult> recipe(const AffineParams& p, long n, const PeriodicSystem& sys) {
    const Integer inv = p.c1 * (p.b4 - 1) - p.c2 * p.b3;
    if (sgn(inv) == 0 || sgn(sys.det()) == 0) return std::nullopt;
    const ExactScalar rho = (S(p.b3) * p.delta - S(p.b4 - 1) * p.eps) / S(inv);
    const Integer d = rho.floor();
    const ExactScalar t = rho - S(d);
    const Integer a = -n * p.c1 * d;
    const Integer b = -n * p.c2 * d;
    ExactScalar y;
    if (sgn(sys.U) != 0) {
        y = (S(b) - sys.R2 - S(sys.V) * t) / S(sys.U);
    } else {
        y = (S(a) - sys.R1 - S(sys.Q) * t) / S(sys.P);
    }
    return finalize(p, n, y, t, false, "constructive recipe for nonzero invariant");
}

// Left kernel (lambda, mu) of a rank-one integer matrix, primitive.
std::pair<Integer, Integer> left_kernel(const PeriodicSystem& sys) {
    Integer lambda, mu;
    if (sgn(sys.P) != 0 || sgn(sys.U) != 0) {
        lambda = sys.U;
        mu = -sys.P;
    } else {
        lambda = sys.V;
        mu = -sys.Q;
    }
    if (sgn(lambda) == 0 && sgn(mu) == 0) {
        lambda = 1;
        mu = 0;
    }
    const Integer g = gcd(lambda, mu);
    return {lambda / g, mu / g};
}

SolveResult exact_decision(const AffineParams& p, long n, const PeriodicSystem& sys, const TInterval& r) {
    const Integer D = sys.det();
    if (sgn(D) != 0) {
        // t = (P b - U a + gamma) / D; P b - U a runs over g Z.
        const ExactScalar gamma = S(sys.U) * sys.R1 - S(sys.P) * sys.R2;
        const GcdResult e = extended_gcd(sys.P, Integer(-sys.U));
        const auto m = integer_in_range(S(e.g) / S(D), gamma / S(D), r);
        if (!m) {
            return proven_empty("the admissible t values (" + e.g.get_str() + " m + " + gamma.to_string() + ") / " +
                                D.get_str() + " miss [" + r.lo.to_string() + ", " + r.hi.to_string() + "]");
        }
        const Integer b = e.s * *m;
        const Integer a = e.t * *m;
        const ExactScalar t = (S(e.g) * S(*m) + gamma) / S(D);
        const ExactScalar y = (S(sys.V) * (S(a) - sys.R1) - S(sys.Q) * (S(b) - sys.R2)) / S(D);
        return finalize(p, n, y, t, false, "unique solution of the nonsingular system");
    }

    const bool row1 = sgn(sys.P) != 0 || sgn(sys.Q) != 0;
    const bool row2 = sgn(sys.U) != 0 || sgn(sys.V) != 0;
    if (!row1 && !row2) {
        if (!sys.R1.is_integer()) return proven_empty(reason_for(sys.R1));
        if (!sys.R2.is_integer()) return proven_empty(reason_for(sys.R2));
        return finalize(p, n, ExactScalar(0), r.lo, true, "every point of the slice is periodic");
    }

    // Rank one: lambda a + mu b = rho is forced.
    const auto [lambda, mu] = left_kernel(sys);
    const ExactScalar rho = S(lambda) * sys.R1 + S(mu) * sys.R2;
    if (!rho.is_integer()) return proven_empty(reason_for(rho));
    const GcdResult e = extended_gcd(lambda, mu);
    const Integer rho_int = rho.rat().numerator();
    const Integer a0 = e.s * rho_int;
    const Integer b0 = e.t * rho_int;

    // One nonzero row alpha y + beta t = base + kappa j - R, j free.
    Integer alpha, beta, base, kappa;
    ExactScalar R;
    if (row1) {
        alpha = sys.P;
        beta = sys.Q;
        base = a0;
        kappa = mu;
        R = sys.R1;
    } else {
        alpha = sys.U;
        beta = sys.V;
        base = b0;
        kappa = -lambda;
        R = sys.R2;
    }
    if (sgn(alpha) != 0) {
        const ExactScalar t = r.lo;
        const ExactScalar y = (S(base) - R - S(beta) * t) / S(alpha);
        return finalize(p, n, y, t, false, "rank-one system, y solves the remaining equation");
    }
    const auto j = integer_in_range(S(kappa) / S(beta), (S(base) - R) / S(beta), r);
    if (!j) {
        return proven_empty("t is confined to (" + kappa.get_str() + " j + " + (S(base) - R).to_string() + ") / " +
                            beta.get_str() + ", which misses [" + r.lo.to_string() + ", " + r.hi.to_string() + "]");
    }
    const ExactScalar t = (S(kappa) * S(*j) + S(base) - R) / S(beta);
    return finalize(p, n, ExactScalar(0), t, false, "rank-one system, t fixed by the lift");
}

// (y, t) solving the system for the given lifts, if any lies in range.
std::optional<std::pair<ExactScalar, ExactScalar>> solve_given_lifts(const PeriodicSystem& sys, const Integer& a,
                                                                     const Integer& b, const TInterval& r) {
    const ExactScalar ra = S(a) - sys.R1;
    const ExactScalar rb = S(b) - sys.R2;
    const Integer D = sys.det();
    if (sgn(D) != 0) {
        const ExactScalar t = (S(sys.P) * rb - S(sys.U) * ra) / S(D);
        if (!in_range(t, r)) return std::nullopt;
        return std::pair{(S(sys.V) * ra - S(sys.Q) * rb) / S(D), t};
    }
    const bool row1 = sgn(sys.P) != 0 || sgn(sys.Q) != 0;
    const bool row2 = sgn(sys.U) != 0 || sgn(sys.V) != 0;
    if (!row1 && !row2) {
        if (!ra.is_zero() || !rb.is_zero()) return std::nullopt;
        return std::pair{ExactScalar(0), r.lo};
    }
    const auto [lambda, mu] = left_kernel(sys);
    if (!(S(lambda) * ra + S(mu) * rb).is_zero()) return std::nullopt;
    const Integer& alpha = row1 ? sys.P : sys.U;
    const Integer& beta = row1 ? sys.Q : sys.V;
    const ExactScalar& rhs = row1 ? ra : rb;
    if (sgn(alpha) != 0) return std::pair{(rhs - S(beta) * r.lo) / S(alpha), r.lo};
    const ExactScalar t = rhs / S(beta);
    if (!in_range(t, r)) return std::nullopt;
    return std::pair{ExactScalar(0), t};
}

std::pair<ExactScalar, ExactScalar> apply_matrix(const IntMatrix2& m, const ExactScalar& x, const ExactScalar& y) {
    return {S(m.m11) * x + S(m.m12) * y, S(m.m21) * x + S(m.m22) * y};
}

}  // namespace

AffineParams AffineParams::from(const Classification& cls, ExactScalar eps, ExactScalar delta) {
    if (!cls.classified()) throw InvalidArgument("affine model needs a classified input");
    return {cls.b3(), cls.b4(), cls.c1t, cls.c2t, std::move(eps), std::move(delta)};
}

BundlePoint BundlePoint::canonical(const ExactScalar& x, const ExactScalar& y, const ExactScalar& t) {
    if (t.sign() < 0 || (t - ExactScalar(1)).sign() > 0) {
        throw InvalidArgument("t = " + t.to_string() + " is outside [0, 1]");
    }
    return {frac(x), frac(y), t};
}

LiftedPoint one_step(const AffineParams& p, const LiftedPoint& pt) {
    return {pt.x + S(p.b3) * pt.y + S(p.c1) * pt.t + p.eps, S(p.b4) * pt.y + S(p.c2) * pt.t + p.delta, pt.t};
}

LiftedPoint iterate_closed_form(const AffineParams& p, const LiftedPoint& pt, long n) {
    require_positive(n);
    const GeometricSums g = geometric_sums(p.b4, n);
    Integer b4n;
    mpz_pow_ui(b4n.get_mpz_t(), p.b4.get_mpz_t(), static_cast<unsigned long>(n));
    const ExactScalar x = pt.x + S(p.b3 * g.s) * pt.y + S(n * p.c1 + p.b3 * p.c2 * g.w) * pt.t +
                          S(p.b3 * g.w) * p.delta + ExactScalar(n) * p.eps;
    const ExactScalar y = S(b4n) * pt.y + S(p.c2 * g.s) * pt.t + S(g.s) * p.delta;
    return {x, y, pt.t};
}

bool check_gluing(CaseTag tag, const BundleSpec& bundle, const AffineParams& p, long n) {
    require_positive(n);
    const IntMatrix2& A = bundle.gluing;
    const GeometricSums g = geometric_sums(p.b4, n);
    const ExactScalar nn(n);
    const ExactScalar& e = p.eps;
    const ExactScalar& d = p.delta;
    const ExactScalar a3 = S(A.m12);
    switch (tag) {
        case CaseTag::I:
            return (nn * (S(A.m11) * e + a3 * d - e)).is_integer() && (nn * (S(A.m21) * e + S(A.m22) * d - d)).is_integer();
        case CaseTag::II:
            return (a3 * d * S(g.s)).is_integer();
        // III-V: the b3 delta W term appears on both sides of the identification
        // with the same sign, so it cancels in III and doubles in IV and V.
        case CaseTag::III:
            return (ExactScalar(2) * d * S(g.s)).is_integer() && (a3 * d * S(g.s)).is_integer();
        case CaseTag::IV:
            return (ExactScalar(2) * d * S(g.s)).is_integer() &&
                   (ExactScalar(2) * nn * e - a3 * d * S(g.s) + S(2 * p.b3 * g.w) * d).is_integer();
        case CaseTag::V:
            return (ExactScalar(2) * nn * e - a3 * d * S(g.s) + S(2 * p.b3 * g.w) * d).is_integer();
        case CaseTag::Unclassifiable:
            break;
    }
    throw InvalidArgument("gluing check needs a classified case");
}

std::pair<ExactScalar, ExactScalar> descent_defect(const AffineParams& p, const BundleSpec& bundle,
                                                   const ExactScalar& x, const ExactScalar& y, long n) {
    const LiftedPoint bottom = iterate_closed_form(p, {x, y, ExactScalar(0)}, n);
    const auto [ax, ay] = apply_matrix(bundle.gluing, x, y);
    const LiftedPoint top = iterate_closed_form(p, {ax, ay, ExactScalar(1)}, n);
    const auto [gx, gy] = apply_matrix(bundle.gluing, bottom.x, bottom.y);
    return {gx - top.x, gy - top.y};
}

PeriodicSystem PeriodicSystem::of(const AffineParams& p, long n) {
    require_positive(n);
    const GeometricSums g = geometric_sums(p.b4, n);
    Integer b4n;
    mpz_pow_ui(b4n.get_mpz_t(), p.b4.get_mpz_t(), static_cast<unsigned long>(n));
    PeriodicSystem sys;
    sys.P = p.b3 * g.s;
    sys.Q = n * p.c1 + p.b3 * p.c2 * g.w;
    sys.R1 = S(p.b3 * g.w) * p.delta + ExactScalar(n) * p.eps;
    sys.U = b4n - 1;
    sys.V = p.c2 * g.s;
    sys.R2 = S(g.s) * p.delta;
    return sys;
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solution: return "solution";
        case SolveStatus::NoneFound: return "none_found";
        case SolveStatus::ProvenEmpty: return "proven_empty";
    }
    return "none_found";
}

SolveStatus parse_solve_status(std::string_view text) {
    if (text == "solution") return SolveStatus::Solution;
    if (text == "none_found") return SolveStatus::NoneFound;
    if (text == "proven_empty") return SolveStatus::ProvenEmpty;
    throw ParseError("unknown solver verdict '" + std::string(text) + "'");
}

SolveResult find_periodic(const AffineParams& p, long n, long search_bound, const TInterval& range) {
    require_positive(n);
    if (search_bound < 0) throw InvalidArgument("search bound must be nonnegative");
    if (range.lo > range.hi || range.lo.sign() < 0 || range.hi > ExactScalar(1)) {
        throw InvalidArgument("t interval must lie inside [0, 1]");
    }
    const PeriodicSystem sys = PeriodicSystem::of(p, n);
    if (is_unit_interval(range)) {
        if (auto r = recipe(p, n, sys)) return *r;
    }
    SolveResult decided = exact_decision(p, n, sys, range);
    if (decided.status != SolveStatus::NoneFound) return decided;
    // The case analysis is complete, so this is only reachable if it is not.
    return window_scan(p, n, search_bound, range);
}

SolveResult window_scan(const AffineParams& p, long n, long bound, const TInterval& range) {
    require_positive(n);
    const PeriodicSystem sys = PeriodicSystem::of(p, n);
    for (long abs_a = 0; abs_a <= bound; ++abs_a) {
        for (long abs_b = 0; abs_b <= bound; ++abs_b) {
            for (long a : {-abs_a, abs_a}) {
                for (long b : {-abs_b, abs_b}) {
                    if (auto yt = solve_given_lifts(sys, Integer(a), Integer(b), range)) {
                        return finalize(p, n, yt->first, yt->second, false,
                                        "window scan hit at (a, b) = (" + std::to_string(a) + ", " +
                                            std::to_string(b) + ")");
                    }
                    if (abs_b == 0) break;
                }
                if (abs_a == 0) break;
            }
        }
    }
    SolveResult out;
    out.status = SolveStatus::NoneFound;
    out.reason = "no solution with |a|, |b| <= " + std::to_string(bound);
    return out;
}

const AffinePiece& PiecewiseMap::piece_at(const ExactScalar& t) const {
    for (const auto& piece : pieces) {
        if (in_range(t, piece.range)) return piece;
    }
    throw InvalidArgument("t = " + t.to_string() + " is not covered by any piece");
}

LiftedPoint PiecewiseMap::apply(const LiftedPoint& pt) const { return one_step(piece_at(pt.t).params, pt); }

LiftedPoint PiecewiseMap::iterate(const LiftedPoint& pt, long n) const {
    // t is invariant, so every step uses the same piece.
    return iterate_closed_form(piece_at(pt.t).params, pt, n);
}

SolveResult find_periodic(const PiecewiseMap& g, long n, long search_bound) {
    std::string reasons;
    bool all_empty = true;
    for (std::size_t i = 0; i < g.pieces.size(); ++i) {
        const AffinePiece& piece = g.pieces[i];
        SolveResult r = find_periodic(piece.params, n, search_bound, piece.range);
        if (r.status == SolveStatus::Solution) return r;
        all_empty = all_empty && r.status == SolveStatus::ProvenEmpty;
        if (!reasons.empty()) reasons += "; ";
        reasons += "piece " + std::to_string(i + 1) + ": " + r.reason;
    }
    SolveResult out;
    out.status = all_empty ? SolveStatus::ProvenEmpty : SolveStatus::NoneFound;
    out.reason = reasons;
    return out;
}

std::pair<ExactScalar, ExactScalar> descent_defect(const PiecewiseMap& g, const BundleSpec& bundle,
                                                   const ExactScalar& x, const ExactScalar& y, long n) {
    const LiftedPoint bottom = g.iterate({x, y, ExactScalar(0)}, n);
    const auto [ax, ay] = apply_matrix(bundle.gluing, x, y);
    const LiftedPoint top = g.iterate({ax, ay, ExactScalar(1)}, n);
    const auto [gx, gy] = apply_matrix(bundle.gluing, bottom.x, bottom.y);
    return {gx - top.x, gy - top.y};
}

LiftedPoint homotopy_point(const Integer& c1, const Integer& c2, const ExactScalar& eps, const ExactScalar& delta,
                           const LiftedPoint& pt, const ExactScalar& s) {
    const ExactScalar& t = pt.t;
    const ExactScalar mid = (s + ExactScalar(1)) / ExactScalar(2);
    if (t <= s) return {pt.x + S(c1) * t + eps, pt.y + S(c2) * t + delta, t};
    if (t <= mid) return {pt.x + S(c1) * (ExactScalar(2) * t - s) + eps, pt.y + S(c2) * s + delta, t};
    return {pt.x + S(c1) + eps, pt.y + S(c2) * (ExactScalar(2) * t - ExactScalar(1)) + delta, t};
}

PiecewiseMap split_translation_map(const Integer& c1, const Integer& c2, const ExactScalar& eps,
                                   const ExactScalar& delta) {
    const ExactScalar half(Rational(1, 2));
    PiecewiseMap g;
    g.pieces.push_back({{ExactScalar(0), half}, {0, 1, 2 * c1, 0, eps, delta}});
    g.pieces.push_back({{half, ExactScalar(1)}, {0, 1, 0, 2 * c2, eps + S(c1), delta - S(c2)}});
    return g;
}

namespace {

struct Candidate {
    ExactScalar eps;
    ExactScalar delta;
    std::string label;
};

// n eps in Z, for all n that are multiples of the denominator; never if irrational.
bool integral_at(const ExactScalar& v, long n) { return (ExactScalar(n) * v).is_integer(); }

long period_of(const ExactScalar& v) {
    if (!v.is_rational()) return 1;
    return v.rat().denominator().get_si();
}

// First n at which the split map g^n has a fixed point, or nullopt if none.
// g^n is fixed on the first half iff n delta in Z and (c1 != 0 or n eps in Z),
// on the second half iff n eps in Z and (c2 != 0 or n delta in Z).
std::optional<long> first_failure(const Candidate& c, const Integer& c1, const Integer& c2) {
    const long limit = std::lcm(period_of(c.eps), period_of(c.delta));
    for (long n = 1; n <= limit; ++n) {
        const bool ie = integral_at(c.eps, n);
        const bool id = integral_at(c.delta, n);
        if ((id && (sgn(c1) != 0 || ie)) || (ie && (sgn(c2) != 0 || id))) return n;
    }
    return std::nullopt;
}

FixedPointFreeWitness build_case_i(const BundleSpec& bundle, const FiberedMapSpec& f, long horizon) {
    const IntMatrix2& A = bundle.gluing;
    const IntMatrix2 K = A - IntMatrix2::identity();

    std::optional<IntVec2> u;
    if (K == IntMatrix2{0, 0, 0, 0}) {
        u = IntVec2{1, 1};
    } else if (sgn(K.det()) == 0) {
        Integer r1 = K.m11, r2 = K.m12;
        if (sgn(r1) == 0 && sgn(r2) == 0) {
            r1 = K.m21;
            r2 = K.m22;
        }
        const Integer g = gcd(r1, r2);
        u = IntVec2{-r2 / g, r1 / g};
    }

    std::vector<Candidate> candidates;
    if (u) {
        candidates.push_back({ExactScalar(Rational(0), Rational(u->x)), ExactScalar(Rational(0), Rational(u->y)),
                              "sqrt2 times the fixed vector (" + u->x.get_str() + ", " + u->y.get_str() + ")"});
    }
    // Rational translations solving (A - I)(eps, delta) in Z^2, small denominators.
    for (long q = 2; q <= horizon + 1; ++q) {
        for (long pe = 0; pe < q; ++pe) {
            for (long pd = 0; pd < q; ++pd) {
                const Rational e{Integer(pe), Integer(q)};
                const Rational d{Integer(pd), Integer(q)};
                if (std::gcd(std::gcd(pe, pd), q) != 1) continue;
                const Rational gx = Rational(K.m11) * e + Rational(K.m12) * d;
                const Rational gy = Rational(K.m21) * e + Rational(K.m22) * d;
                if (!gx.is_integer() || !gy.is_integer()) continue;
                candidates.push_back({ExactScalar(e), ExactScalar(d), "rational translation"});
                if (u) {
                    candidates.push_back({ExactScalar(e, Rational(u->x)), ExactScalar(d, Rational(u->y)),
                                          "rational translation plus sqrt2 times the fixed vector"});
                }
            }
        }
    }

    const Candidate* best = nullptr;
    std::optional<long> best_fail;
    for (const auto& c : candidates) {
        const auto fail = first_failure(c, f.c1, f.c2);
        if (!fail) {
            best = &c;
            best_fail.reset();
            break;
        }
        if (!best || *fail > *best_fail) {
            best = &c;
            best_fail = fail;
        }
    }
    if (!best || (best_fail && *best_fail <= horizon)) {
        throw ConstructionUnavailable("no translation (eps, delta) with (A - I)(eps, delta) integral keeps g^n "
                                      "fixed point free for n <= " + std::to_string(horizon) +
                                      " (det(A - I) = " + K.det().get_str() + ")");
    }

    FixedPointFreeWitness w;
    w.case_tag = CaseTag::I;
    w.params = {0, 1, f.c1, f.c2, best->eps, best->delta};
    w.map = split_translation_map(f.c1, f.c2, best->eps, best->delta);
    if (best_fail) w.valid_through = *best_fail - 1;
    w.construction = "case I split map with eps = " + best->eps.to_string() + ", delta = " +
                     best->delta.to_string() + " (" + best->label + ")";
    return w;
}

FixedPointFreeWitness build_case_ii(const BundleSpec& bundle, const FiberedMapSpec& f, long horizon) {
    const Integer& a3 = bundle.gluing.m12;
    const Integer& b3 = f.fiber.m12;
    const Integer& b4 = f.fiber.m22;
    if (sgn(base_invariant(f)) != 0) {
        throw ConditionsNotMet("case II requires c1(b4-1) - c2 b3 = 0, got " + base_invariant(f).get_str());
    }
    ExactScalar eps, delta;
    std::optional<long> valid_through;
    std::string how;
    if (b4 != 1) {
        eps = ExactScalar::sqrt2();
        how = "b4 != 1: delta = 0, eps irrational";
    } else if (sgn(f.c2) != 0 || (sgn(b3) == 0 && sgn(f.c1) == 0)) {
        eps = ExactScalar::sqrt2();
        how = "b4 = 1, b3 = 0: delta = 0, eps irrational";
    } else if (sgn(a3) == 0) {
        delta = ExactScalar::sqrt2();
        how = "b4 = 1, c2 = 0: delta irrational";
    } else {
        // delta must satisfy a3 delta in Z; the best choice 1/|a3| survives n < |a3|.
        delta = ExactScalar(Rational(Integer(1), abs(a3)));
        const long period = Integer(abs(a3)).get_si();
        if (period - 1 < horizon) {
            throw ConstructionUnavailable("b4 = 1, c2 = 0 and a3 = " + a3.get_str() +
                                          ": every admissible delta is in Z/a3, so g^" + std::to_string(period) +
                                          " has fixed points");
        }
        valid_through = period - 1;
        how = "b4 = 1, c2 = 0: delta = 1/|a3|";
    }
    FixedPointFreeWitness w;
    w.case_tag = CaseTag::II;
    w.params = {b3, b4, f.c1, f.c2, eps, delta};
    w.map.pieces.push_back({TInterval{}, w.params});
    w.valid_through = valid_through;
    w.construction = "case II affine map (" + how + ")";
    return w;
}

}  // namespace

FixedPointFreeWitness build_main_theorem_g(CaseTag tag, const BundleSpec& bundle, const FiberedMapSpec& f,
                                           long horizon) {
    if (f.fiber.m11 != 1 || sgn(f.fiber.m21) != 0) throw NotNormalized("map must satisfy f_#(a) = a");
    switch (tag) {
        case CaseTag::I:
            if (!f.fiber.is_identity()) throw ConditionsNotMet("case I needs the fiber matrix to be the identity");
            return build_case_i(bundle, f, horizon);
        case CaseTag::II:
            return build_case_ii(bundle, f, horizon);
        default:
            break;
    }
    throw ConditionsNotMet("the explicit construction covers cases I and II only, got case " + to_string(tag));
}

FixedPointFreeWitness build_main_theorem_g(const Classification& cls, long horizon) {
    if (!cls.classified()) throw ConditionsNotMet("input is not classified: " + cls.reason);
    return build_main_theorem_g(cls.case_tag, cls.normalized_bundle(), cls.normalized_map(), horizon);
}

}  // namespace torusfix
