#include "doctest.h"
#include "helpers.hpp"

#include "torusfix/errors.hpp"
#include "torusfix/problem.hpp"
#include "torusfix/report.hpp"
#include "torusfix/verify.hpp"

using namespace torusfix;
using namespace tfx_test;
using nlohmann::json;

TEST_SUITE("problem_report") {

TEST_CASE("JSON problems") {
    const ProblemSpec p = parse_problem_json(
        R"({"A": [[1, 1], [0, 1]], "B": {"b1": 1, "b2": 0, "b3": 2, "b4": 1}, "c1": "-3", "c2": 4, "n": 6,
            "eps": "sqrt2", "search_bound": 10})");
    CHECK(p.A == M(1, 1, 0, 1));
    CHECK(p.B == M(1, 2, 0, 1));
    CHECK(p.c1 == -3);
    CHECK(p.c2 == 4);
    CHECK(p.n == 6);
    CHECK(p.eps == ExactScalar::sqrt2());
    CHECK_FALSE(p.delta.has_value());
    CHECK(p.search_bound == 10);

    const ProblemSpec big = parse_problem_json(R"({"A": [[1,0],[0,1]], "B": [[1,0],[0,1]],
        "c1": "123456789012345678901234567890", "c2": 0})");
    CHECK(big.c1.get_str() == "123456789012345678901234567890");
    CHECK(parse_problem_json(problem_to_json(big).dump()) == big);
    CHECK(parse_problem_json(problem_to_json(p).dump()) == p);
}

TEST_CASE("JSON problem errors name the field") {
    auto message = [](const char* text) {
        try {
            parse_problem_json(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message(R"({"B": [[1,0],[0,1]]})").find("missing field 'A'") != std::string::npos);
    CHECK(message(R"({"A": [[1,0],[0,1]], "B": [[1,0],[0,1]], "d": 1})").find("unknown field 'd'") !=
          std::string::npos);
    CHECK(message(R"({"A": [[1,0]], "B": [[1,0],[0,1]]})").find("'A'") != std::string::npos);
    CHECK(message(R"({"A": [[1,0],[0,1]], "B": [[1,0],[0,1]], "c1": "x"})").find("'c1'") != std::string::npos);
    CHECK(message(R"({"A": [[1,0],[0,1]], "B": [[1,0],[0,1]], "n": 0})").find("'n'") != std::string::npos);
    CHECK(message(R"({"A": [[1,0],[0,1]], "B": [[1,0],[0,1]], "eps": "1/0"})").find("'eps'") != std::string::npos);
    CHECK(message("{not json").find("invalid JSON") != std::string::npos);
}

TEST_CASE("TOML subset") {
    const json j = toml_to_json(R"(# comment
A = [[1, 1],   # trailing comment
     [0, 1]]
c1 = -2
name = "x # not a comment"
table = {b1 = 1, b2 = 0}

[B]
b1 = 1
b3 = 2
b2 = 0
b4 = 1
)");
    CHECK(j["A"] == json::parse("[[1,1],[0,1]]"));
    CHECK(j["c1"] == -2);
    CHECK(j["name"] == "x # not a comment");
    CHECK(j["table"]["b2"] == 0);
    CHECK(j["B"]["b3"] == 2);

    const ProblemSpec p = parse_problem_toml("A = [[1, 0], [0, 1]]\nB = [[1, 2], [0, -1]]\nc1 = 1\nc2 = -1\nn = 4\n");
    CHECK(p.B == M(1, 2, 0, -1));
    CHECK(p.n == 4);
}

TEST_CASE("TOML errors carry line numbers") {
    auto message = [](const char* text) {
        try {
            toml_to_json(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("A = 1\nB = 2\nc1 = = 3\n").find("line 3") != std::string::npos);
    CHECK(message("a = 1\na = 2\n").find("line 2: duplicate") != std::string::npos);
    CHECK(message("[B\n").find("line 1") != std::string::npos);
    CHECK(message("x = [1, 2\n").find("unbalanced") != std::string::npos);
    CHECK(message("just words\n").find("line 1") != std::string::npos);
}

TEST_CASE("loading files") {
    CHECK(load_problem(data_path("case_i.json")).n == 5);
    CHECK(load_problem(data_path("case_ii_unipotent.toml")).B == M(1, 2, 0, 1));
    CHECK_THROWS_AS(load_problem(data_path("missing.json")), ParseError);
    CHECK_THROWS_WITH_AS(load_problem(data_path("bad.toml")), doctest::Contains("line 3"), ParseError);
}

TEST_CASE("analyze pipeline") {
    ProblemSpec case_i{M(2, 1, 1, 1), IntMatrix2::identity(), 1, 2, 5};
    const AnalyzeReport ri = analyze(case_i);
    CHECK(ri.valid);
    CHECK(ri.classification.case_tag == CaseTag::I);
    REQUIRE(ri.realizable.has_value());
    CHECK(ri.realizable->value == Realizability::Realizable);
    REQUIRE(ri.obstruction.rows.size() == 2);
    for (const auto& row : ri.obstruction.rows) CHECK(row.verdict.deformable);
    CHECK_FALSE(ri.witness.has_value());
    CHECK_FALSE(ri.witness_note.empty());

    ProblemSpec case_ii{IntMatrix2::identity(), M(1, 0, 0, -1), 1, 0, 6};
    const AnalyzeReport rii = analyze(case_ii);
    REQUIRE(rii.obstruction.rows.size() == 4);
    CHECK_FALSE(rii.obstruction.rows[0].verdict.deformable);
    CHECK(rii.obstruction.rows[1].verdict.deformable);
    CHECK_FALSE(rii.obstruction.rows[2].verdict.deformable);
    CHECK(rii.obstruction.rows[3].verdict.deformable);
    CHECK(rii.realizable->value == Realizability::NotRealizable);

    ProblemSpec bad{M(-1, 0, 0, 1), M(1, 1, 0, 1), 0, 0, 1};
    const AnalyzeReport rb = analyze(bad);
    CHECK_FALSE(rb.valid);
    CHECK_FALSE(rb.ok());
    CHECK(rb.violation.find("does not commute") != std::string::npos);

    ProblemSpec witnessed{IntMatrix2::identity(), IntMatrix2::identity(), 1, 2, 3};
    const AnalyzeReport rw = analyze(witnessed);
    REQUIRE(rw.witness.has_value());
    CHECK(rw.witness->pieces >= 1);
}

TEST_CASE("solve pipeline") {
    ProblemSpec violating{M(1, 1, 0, 1), M(1, 2, 0, 1), 1, 0, 1};
    violating.delta = X("1/2");
    CHECK_THROWS_AS(solve(violating), GluingViolation);

    ProblemSpec nonzero{IntMatrix2::identity(), M(1, 0, 0, 2), 1, 1, 1};
    nonzero.eps = X("1/3");
    nonzero.delta = X("1/5");
    const SolveReport rn = solve(nonzero);
    CHECK(rn.params_source == "input");
    REQUIRE(rn.result.status == SolveStatus::Solution);
    CHECK(rn.result.solution->point.t >= ExactScalar(0));
    CHECK(rn.result.solution->point.t <= ExactScalar(1));

    ProblemSpec empty{IntMatrix2::identity(), M(1, 2, 0, -1), 1, -1, 4};
    const SolveReport re = solve(empty);
    CHECK(re.params_source == "construction");
    CHECK(re.result.status == SolveStatus::ProvenEmpty);
    REQUIRE(re.window_check.has_value());

    ProblemSpec iii{M(1, 0, 0, -1), M(1, 0, 0, 3), 0, 0, 2};
    const SolveReport r3 = solve(iii);
    CHECK(r3.params_source == "default");
    CHECK(r3.gluing_ok);

    ProblemSpec hyperbolic{M(2, 1, 1, 1), M(2, 1, 1, 1), 0, 0, 1};
    CHECK_THROWS_AS(solve(hyperbolic), InvalidArgument);
}

TEST_CASE("reports round-trip through JSON") {
    Rng rng(51);
    for (int trial = 0; trial < 60; ++trial) {
        const RandomInstance inst = random_classified(rng);
        ProblemSpec spec{inst.bundle.gluing, inst.map.fiber, inst.map.c1, inst.map.c2, uniform(rng, 1, 8)};
        const AnalyzeReport a = analyze(spec);
        CHECK(analyze_report_from_json(json::parse(to_json(a).dump())) == a);
        try {
            const SolveReport s = solve(spec);
            CHECK(solve_report_from_json(json::parse(to_json(s).dump())) == s);
        } catch (const GluingViolation&) {
        }
    }
    const AnalyzeReport unclassified = analyze({M(2, 1, 1, 1), M(2, 1, 1, 1), 0, 0, 1});
    CHECK(analyze_report_from_json(to_json(unclassified)) == unclassified);
    CHECK_THROWS_AS(analyze_report_from_json(json{{"schema", "other"}}), ParseError);
}

TEST_CASE("text reports") {
    const std::string text = render_text(analyze({IntMatrix2::identity(), M(1, 0, 0, -1), 1, 0, 6}));
    CHECK(text.find("case: II") != std::string::npos);
    CHECK(text.find("iterate/case-II/b4=-1-even-n") != std::string::npos);
    CHECK(text.find("realizable: NotRealizable") != std::string::npos);
}

}
