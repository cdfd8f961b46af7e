#include "torusfix/report.hpp"

#include "torusfix/errors.hpp"
#include "torusfix/iterates.hpp"

#include <sstream>

namespace torusfix {

using nlohmann::json;

namespace {

std::string str_field(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) throw ParseError(std::string("report field '") + key + "' missing");
    return j.at(key).get<std::string>();
}

const json& field(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("report field '") + key + "' missing");
    return j.at(key);
}

ExactScalar scalar_field(const json& j, const char* key) { return ExactScalar::parse(str_field(j, key)); }

long long_field(const json& j, const char* key) {
    const Integer v = json_integer(field(j, key), key);
    if (!v.fits_slong_p()) throw ParseError(std::string("report field '") + key + "' out of range");
    return v.get_si();
}

json optional_long(const std::optional<long>& v) { return v ? json(*v) : json(nullptr); }

std::optional<long> optional_long_from(const json& j, const char* key) {
    const json& v = field(j, key);
    if (v.is_null()) return std::nullopt;
    return long_field(j, key);
}

json params_json(const AffineParams& p) {
    return {{"b3", integer_json(p.b3)}, {"b4", integer_json(p.b4)},   {"c1", integer_json(p.c1)},
            {"c2", integer_json(p.c2)}, {"eps", p.eps.to_string()}, {"delta", p.delta.to_string()}};
}

AffineParams params_from(const json& j) {
    return {json_integer(field(j, "b3"), "b3"), json_integer(field(j, "b4"), "b4"),
            json_integer(field(j, "c1"), "c1"), json_integer(field(j, "c2"), "c2"),
            scalar_field(j, "eps"),             scalar_field(j, "delta")};
}

json map_json(const PiecewiseMap& g) {
    json pieces = json::array();
    for (const auto& piece : g.pieces) {
        json p = params_json(piece.params);
        p["t_lo"] = piece.range.lo.to_string();
        p["t_hi"] = piece.range.hi.to_string();
        pieces.push_back(std::move(p));
    }
    return pieces;
}

PiecewiseMap map_from(const json& j) {
    PiecewiseMap g;
    for (const auto& p : j) g.pieces.push_back({{scalar_field(p, "t_lo"), scalar_field(p, "t_hi")}, params_from(p)});
    return g;
}

std::string describe_map(const PiecewiseMap& g) {
    std::ostringstream out;
    for (const auto& piece : g.pieces) {
        const AffineParams& p = piece.params;
        out << "  t in [" << piece.range.lo << ", " << piece.range.hi << "]: (x, y, t) -> (x + " << p.b3 << " y + "
            << p.c1 << " t + " << p.eps << ", " << p.b4 << " y + " << p.c2 << " t + " << p.delta << ", t)\n";
    }
    return out.str();
}

}  // namespace

json classification_json(const Classification& cls) {
    return {{"case", to_string(cls.case_tag)}, {"P", matrix_json(cls.P)},         {"A1", matrix_json(cls.A1)},
            {"B1", matrix_json(cls.B1)},       {"c1t", integer_json(cls.c1t)}, {"c2t", integer_json(cls.c2t)},
            {"reason", cls.reason}};
}

Classification classification_from_json(const json& j) {
    Classification cls;
    cls.case_tag = parse_case_tag(str_field(j, "case"));
    cls.P = json_matrix(field(j, "P"), "P", 'p');
    cls.A1 = json_matrix(field(j, "A1"), "A1", 'a');
    cls.B1 = json_matrix(field(j, "B1"), "B1", 'b');
    cls.c1t = json_integer(field(j, "c1t"), "c1t");
    cls.c2t = json_integer(field(j, "c2t"), "c2t");
    cls.reason = str_field(j, "reason");
    return cls;
}

json solve_result_json(const SolveResult& r) {
    json j = {{"verdict", to_string(r.status)}, {"reason", r.reason}};
    if (r.solution) {
        const PeriodicSolution& s = *r.solution;
        j["solution"] = {{"x", s.point.x.to_string()}, {"y", s.point.y.to_string()}, {"t", s.point.t.to_string()},
                         {"a", integer_json(s.a)},     {"b", integer_json(s.b)},     {"n", s.n},
                         {"degenerate", s.degenerate}};
    } else {
        j["solution"] = nullptr;
    }
    return j;
}

SolveResult solve_result_from_json(const json& j) {
    SolveResult r;
    r.status = parse_solve_status(str_field(j, "verdict"));
    r.reason = str_field(j, "reason");
    const json& s = field(j, "solution");
    if (!s.is_null()) {
        PeriodicSolution sol;
        sol.point = {scalar_field(s, "x"), scalar_field(s, "y"), scalar_field(s, "t")};
        sol.a = json_integer(field(s, "a"), "a");
        sol.b = json_integer(field(s, "b"), "b");
        sol.n = long_field(s, "n");
        sol.degenerate = field(s, "degenerate").get<bool>();
        r.solution = sol;
    }
    return r;
}

AnalyzeReport analyze(const ProblemSpec& spec) {
    AnalyzeReport report;
    report.input = spec;
    if (!spec.A.is_unimodular()) {
        report.violation = "gluing matrix " + spec.A.to_string() + " has determinant " + spec.A.det().get_str();
    } else {
        const HomValidation hv = validate_hom(spec.map(), spec.bundle());
        report.valid = hv.valid;
        report.violation = hv.violation;
    }
    report.classification = classify(spec.bundle(), spec.map());
    if (!report.classification.classified()) return report;

    report.obstruction = obstruction_report(report.classification, spec.n);
    report.realizable = realizable_fixed_point_free(report.classification, spec.n);

    const CaseTag tag = report.classification.case_tag;
    if (report.realizable->value == Realizability::Realizable && (tag == CaseTag::I || tag == CaseTag::II)) {
        try {
            const FixedPointFreeWitness w = build_main_theorem_g(report.classification);
            report.witness = WitnessSummary{w.construction, w.params.eps, w.params.delta, w.valid_through,
                                            static_cast<int>(w.map.pieces.size())};
        } catch (const ConstructionUnavailable& e) {
            report.witness_note = e.what();
        }
    }
    return report;
}

json to_json(const AnalyzeReport& r) {
    json j;
    j["schema"] = kAnalyzeSchema;
    j["input"] = problem_to_json(r.input);
    j["valid"] = r.valid;
    j["violation"] = r.violation;
    j["case"] = to_string(r.classification.case_tag);
    j["classification"] = classification_json(r.classification);
    j["n"] = r.input.n;
    json rows = json::array();
    for (const auto& row : r.obstruction.rows) {
        rows.push_back({{"k", row.k},
                        {"deformable", row.verdict.deformable},
                        {"clause", row.verdict.clause},
                        {"nielsen", integer_json(row.nielsen)}});
    }
    j["divisors"] = rows;
    j["feasible"] = r.obstruction.feasible;
    if (r.realizable) {
        j["realizable"] = to_string(r.realizable->value);
        j["realizable_clause"] = r.realizable->clause;
    } else {
        j["realizable"] = nullptr;
        j["realizable_clause"] = nullptr;
    }
    if (r.witness) {
        j["witness"] = {{"construction", r.witness->construction},
                        {"eps", r.witness->eps.to_string()},
                        {"delta", r.witness->delta.to_string()},
                        {"valid_through", optional_long(r.witness->valid_through)},
                        {"pieces", r.witness->pieces}};
    } else {
        j["witness"] = nullptr;
    }
    j["witness_note"] = r.witness_note;
    return j;
}

AnalyzeReport analyze_report_from_json(const json& j) {
    if (str_field(j, "schema") != kAnalyzeSchema) throw ParseError("unsupported report schema");
    AnalyzeReport r;
    r.input = problem_from_json(field(j, "input"));
    r.valid = field(j, "valid").get<bool>();
    r.violation = str_field(j, "violation");
    r.classification = classification_from_json(field(j, "classification"));
    for (const auto& row : field(j, "divisors")) {
        DivisorRow d;
        d.k = long_field(row, "k");
        d.verdict = {field(row, "deformable").get<bool>(), str_field(row, "clause")};
        d.nielsen = json_integer(field(row, "nielsen"), "nielsen");
        r.obstruction.rows.push_back(std::move(d));
    }
    r.obstruction.feasible = field(j, "feasible").get<bool>();
    if (!field(j, "realizable").is_null()) {
        r.realizable = RealizabilityVerdict{parse_realizability(str_field(j, "realizable")),
                                            str_field(j, "realizable_clause")};
    }
    const json& w = field(j, "witness");
    if (!w.is_null()) {
        r.witness = WitnessSummary{str_field(w, "construction"), scalar_field(w, "eps"), scalar_field(w, "delta"),
                                   optional_long_from(w, "valid_through"),
                                   static_cast<int>(long_field(w, "pieces"))};
    }
    r.witness_note = str_field(j, "witness_note");
    return r;
}

std::string render_text(const AnalyzeReport& r) {
    std::ostringstream out;
    const Classification& c = r.classification;
    out << "A = " << r.input.A << ", B = " << r.input.B << ", (c1, c2) = (" << r.input.c1 << ", " << r.input.c2
        << "), n = " << r.input.n << "\n";
    if (!r.valid) out << "homomorphism check: INVALID (" << r.violation << ")\n";
    else out << "homomorphism check: ok (AB = BA, relations respected)\n";
    if (!c.classified()) {
        out << "case: Unclassifiable (" << c.reason << ")\n";
        return out.str();
    }
    out << "case: " << to_string(c.case_tag) << "\n";
    out << "  P = " << c.P << ", A1 = " << c.A1 << ", B1 = " << c.B1 << ", (c1t, c2t) = (" << c.c1t << ", "
        << c.c2t << ")\n";
    out << "divisors of n:\n";
    for (const auto& row : r.obstruction.rows) {
        out << "  k = " << row.k << ": " << (row.verdict.deformable ? "deformable" : "NOT deformable") << "  ["
            << row.verdict.clause << "]  N(f^k|fiber) = " << row.nielsen << "\n";
    }
    out << "divisor obstruction: " << (r.obstruction.feasible ? "none" : "present") << "\n";
    if (r.realizable) out << "realizable: " << to_string(r.realizable->value) << "  [" << r.realizable->clause << "]\n";
    if (r.witness) {
        out << "witness: " << r.witness->construction << "\n";
        if (r.witness->valid_through) out << "  g^n fixed point free for n <= " << *r.witness->valid_through << "\n";
        else out << "  g^n fixed point free for every n\n";
    } else if (!r.witness_note.empty()) {
        out << "witness: unavailable (" << r.witness_note << ")\n";
    }
    return out.str();
}

SolveReport solve(const ProblemSpec& spec) {
    SolveReport report;
    report.input = spec;
    report.classification = classify(spec.bundle(), spec.map());
    const Classification& cls = report.classification;
    if (!cls.classified()) throw InvalidArgument("input is not classifiable: " + cls.reason);
    const long n = spec.n;
    const long bound = spec.search_bound.value_or(kDefaultSearchBound);

    AffineParams base;
    if (spec.eps || spec.delta) {
        report.params_source = "input";
        base = AffineParams::from(cls, spec.eps.value_or(ExactScalar(0)), spec.delta.value_or(ExactScalar(0)));
        report.map.pieces.push_back({TInterval{}, base});
    } else {
        bool built = false;
        if (cls.case_tag == CaseTag::I || cls.case_tag == CaseTag::II) {
            try {
                const FixedPointFreeWitness w = build_main_theorem_g(cls);
                report.params_source = "construction";
                report.map = w.map;
                base = w.params;
                built = true;
            } catch (const ConditionsNotMet&) {
            } catch (const ConstructionUnavailable&) {
            }
        }
        if (!built) {
            report.params_source = "default";
            ExactScalar eps(0), delta(0);
            if (cls.case_tag == CaseTag::II) eps = ExactScalar::sqrt2();
            else if (cls.case_tag != CaseTag::I) eps = ExactScalar(Rational(1, 2));
            base = AffineParams::from(cls, eps, delta);
            report.map.pieces.push_back({TInterval{}, base});
        }
    }

    const BundleSpec adapted = cls.normalized_bundle();
    report.gluing_ok = check_gluing(cls.case_tag, adapted, base, 1) && check_gluing(cls.case_tag, adapted, base, n);
    if (!report.gluing_ok) {
        throw GluingViolation("eps = " + base.eps.to_string() + ", delta = " + base.delta.to_string() +
                              " violate the descent condition of case " + to_string(cls.case_tag) +
                              ", so the affine map does not induce a map on MA");
    }

    report.result = find_periodic(report.map, n, bound);
    if (report.result.status == SolveStatus::ProvenEmpty) {
        SolveResult check;
        check.status = SolveStatus::NoneFound;
        for (const auto& piece : report.map.pieces) {
            SolveResult w = window_scan(piece.params, n, bound, piece.range);
            if (w.status == SolveStatus::Solution) {
                throw InternalMismatch("solver proved no periodic point, but the window scan found one: " + w.reason);
            }
        }
        check.reason = "window scan |a|, |b| <= " + std::to_string(bound) + " agrees: no solution";
        report.window_check = check;
    }
    return report;
}

json to_json(const SolveReport& r) {
    json j;
    j["schema"] = kSolveSchema;
    j["input"] = problem_to_json(r.input);
    j["case"] = to_string(r.classification.case_tag);
    j["classification"] = classification_json(r.classification);
    j["n"] = r.input.n;
    j["params_source"] = r.params_source;
    j["map"] = map_json(r.map);
    j["gluing_ok"] = r.gluing_ok;
    j["result"] = solve_result_json(r.result);
    j["window_check"] = r.window_check ? solve_result_json(*r.window_check) : json(nullptr);
    return j;
}

SolveReport solve_report_from_json(const json& j) {
    if (str_field(j, "schema") != kSolveSchema) throw ParseError("unsupported report schema");
    SolveReport r;
    r.input = problem_from_json(field(j, "input"));
    r.classification = classification_from_json(field(j, "classification"));
    r.params_source = str_field(j, "params_source");
    r.map = map_from(field(j, "map"));
    r.gluing_ok = field(j, "gluing_ok").get<bool>();
    r.result = solve_result_from_json(field(j, "result"));
    if (!field(j, "window_check").is_null()) r.window_check = solve_result_from_json(j.at("window_check"));
    return r;
}

std::string render_text(const SolveReport& r) {
    std::ostringstream out;
    out << "case " << to_string(r.classification.case_tag) << ", n = " << r.input.n << ", parameters from "
        << r.params_source << "\n";
    out << describe_map(r.map);
    out << "gluing: " << (r.gluing_ok ? "ok" : "VIOLATED") << "\n";
    out << "verdict: " << to_string(r.result.status) << "\n";
    if (r.result.solution) {
        const PeriodicSolution& s = *r.result.solution;
        out << "  point (x, y, t) = (" << s.point.x << ", " << s.point.y << ", " << s.point.t << ")\n";
        out << "  lifts (a, b) = (" << s.a << ", " << s.b << ")" << (s.degenerate ? "  [whole slice periodic]" : "")
            << "\n";
    }
    out << "  " << r.result.reason << "\n";
    if (r.window_check) out << "  " << r.window_check->reason << "\n";
    return out.str();
}

}  // namespace torusfix
