#pragma once

/**
 * @file affine_model.hpp
 * @brief Affine representatives on T x [0,1], their iterates, descent to MA,
 * and an exact periodic-point solver.
 *
 * Everything here lives in the adapted basis of a Classification: the map is
 *
 *   F(x, y, t) = (x + b3 y + c1 t + eps,  b4 y + c2 t + delta,  t)
 *
 * and the bundle glues (v, 0) to (A1 v, 1). A point of MA is periodic of
 * period n (in the weak sense F^n(p) = p) iff there are integers a, b with
 *
 *   P y + Q t + R1 = a,    U y + V t + R2 = b,
 *
 * where, with S = sum b4^i and W = sum i b4^(n-1-i) over i < n,
 *
 *   P = b3 S,  Q = n c1 + b3 c2 W,  R1 = b3 delta W + n eps,
 *   U = b4^n - 1,  V = c2 S,  R2 = delta S.
 *
 * x never appears, so solutions are reported with x = 0.
 */

#include "torusfix/classification.hpp"
#include "torusfix/exact_scalar.hpp"
#include "torusfix/iterates.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace torusfix {

struct AffineParams {
    Integer b3{0};
    Integer b4{1};
    Integer c1{0};
    Integer c2{0};
    ExactScalar eps;
    ExactScalar delta;

    static AffineParams from(const Classification& cls, ExactScalar eps, ExactScalar delta);
    FiberedMapSpec as_map() const { return {IntMatrix2{1, b3, 0, b4}, c1, c2}; }

    friend bool operator==(const AffineParams&, const AffineParams&) = default;
};

/// A point of T x [0,1] lifted to R^2 x [0,1]; coordinates are not reduced.
struct LiftedPoint {
    ExactScalar x;
    ExactScalar y;
    ExactScalar t;

    friend bool operator==(const LiftedPoint&, const LiftedPoint&) = default;
};

/// Canonical representative: x, y in [0, 1), t in [0, 1].
struct BundlePoint {
    ExactScalar x;
    ExactScalar y;
    ExactScalar t;

    /// Reduces x and y mod 1; throws InvalidArgument unless 0 <= t <= 1.
    static BundlePoint canonical(const ExactScalar& x, const ExactScalar& y, const ExactScalar& t);
    LiftedPoint lifted() const { return {x, y, t}; }

    friend bool operator==(const BundlePoint&, const BundlePoint&) = default;
};

LiftedPoint one_step(const AffineParams& p, const LiftedPoint& pt);
/// n-th iterate from the closed form (no repeated application).
LiftedPoint iterate_closed_form(const AffineParams& p, const LiftedPoint& pt, long n);

/// Arithmetic descent condition of the given case at iterate n; `bundle`
/// holds the adapted gluing matrix A1.
bool check_gluing(CaseTag tag, const BundleSpec& bundle, const AffineParams& p, long n);

/// A1 F^n(v, 0) - F^n(A1 v, 1). The induced map on MA is well defined at v
/// iff both entries are integers.
std::pair<ExactScalar, ExactScalar> descent_defect(const AffineParams& p, const BundleSpec& bundle,
                                                   const ExactScalar& x, const ExactScalar& y, long n);

/// Coefficients of the periodic-point system at iterate n.
struct PeriodicSystem {
    Integer P, Q, U, V;
    ExactScalar R1, R2;

    static PeriodicSystem of(const AffineParams& p, long n);
    Integer det() const { return P * V - Q * U; }
};

struct PeriodicSolution {
    BundlePoint point;
    Integer a{0};
    Integer b{0};
    long n = 1;
    bool degenerate = false;  // the whole t-slice is periodic

    friend bool operator==(const PeriodicSolution&, const PeriodicSolution&) = default;
};

enum class SolveStatus { Solution, NoneFound, ProvenEmpty };

std::string to_string(SolveStatus s);
SolveStatus parse_solve_status(std::string_view text);

struct SolveResult {
    SolveStatus status = SolveStatus::NoneFound;
    std::optional<PeriodicSolution> solution;
    std::string reason;

    friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

inline constexpr long kDefaultSearchBound = 64;

/// Closed interval of the t coordinate.
struct TInterval {
    ExactScalar lo{0};
    ExactScalar hi{1};

    friend bool operator==(const TInterval&, const TInterval&) = default;
};

/// Decides whether F^n has a fixed point with t in the interval. Tries the
/// constructive recipe for a nonzero invariant first, then an exact case
/// analysis of the linear system. Every returned solution has been
/// substituted back into the closed form with zero residual.
SolveResult find_periodic(const AffineParams& p, long n, long search_bound = kDefaultSearchBound,
                          const TInterval& range = {});

/// Brute-force reference: tries every |a|, |b| <= bound in order of
/// (|a|, |b|, a, b) and reports the first hit, or NoneFound.
SolveResult window_scan(const AffineParams& p, long n, long bound, const TInterval& range = {});

/// Affine pieces over consecutive t intervals; pieces agree on shared endpoints.
struct AffinePiece {
    TInterval range;
    AffineParams params;

    friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

struct PiecewiseMap {
    std::vector<AffinePiece> pieces;

    /// Uses the first piece whose interval contains t.
    LiftedPoint apply(const LiftedPoint& pt) const;
    LiftedPoint iterate(const LiftedPoint& pt, long n) const;
    const AffinePiece& piece_at(const ExactScalar& t) const;

    friend bool operator==(const PiecewiseMap&, const PiecewiseMap&) = default;
};

/// Runs find_periodic piece by piece. ProvenEmpty only if every piece is.
SolveResult find_periodic(const PiecewiseMap& g, long n, long search_bound = kDefaultSearchBound);

std::pair<ExactScalar, ExactScalar> descent_defect(const PiecewiseMap& g, const BundleSpec& bundle,
                                                   const ExactScalar& x, const ExactScalar& y, long n);

/// The straight-line family g' = F with b3 = 0, b4 = 1 deformed into the
/// two-piece map g; s = 1 gives g', s = 0 gives g.
LiftedPoint homotopy_point(const Integer& c1, const Integer& c2, const ExactScalar& eps, const ExactScalar& delta,
                           const LiftedPoint& pt, const ExactScalar& s);

/// Two-piece map g split at t = 1/2.
PiecewiseMap split_translation_map(const Integer& c1, const Integer& c2, const ExactScalar& eps,
                                   const ExactScalar& delta);

/// A map g fiberwise homotopic to f whose iterates are fixed point free.
struct FixedPointFreeWitness {
    CaseTag case_tag = CaseTag::I;
    PiecewiseMap map;
    AffineParams params;                // the one-piece representative g'
    std::optional<long> valid_through;  // nullopt: every n; else g^n is free for n <= value
    std::string construction;

    friend bool operator==(const FixedPointFreeWitness&, const FixedPointFreeWitness&) = default;
};

inline constexpr long kDefaultWitnessHorizon = 8;

/// Case I or II only. Throws ConditionsNotMet when f cannot be realized
/// (wrong case, or nonzero invariant in case II), ConstructionUnavailable
/// when no admissible translation keeps g^n free up to `horizon`.
FixedPointFreeWitness build_main_theorem_g(const Classification& cls, long horizon = kDefaultWitnessHorizon);

/// Same, with the case given explicitly. `bundle` is the adapted gluing matrix
/// and `f` the normalized map (b1 = 1, b2 = 0). Tag II is accepted with B = I.
FixedPointFreeWitness build_main_theorem_g(CaseTag tag, const BundleSpec& bundle, const FiberedMapSpec& f,
                                           long horizon = kDefaultWitnessHorizon);

}  // namespace torusfix
