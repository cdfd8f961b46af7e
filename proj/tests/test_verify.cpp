#include "doctest.h"

#include "torusfix/errors.hpp"
#include "torusfix/verify.hpp"

using namespace torusfix;

TEST_SUITE("verify") {

TEST_CASE("a default run passes every suite") {
    VerifyOptions opts;
    opts.seed = 1;
    opts.trials = 100;
    const VerifySummary s = run_verification(opts);
    CHECK(s.passed());
    CHECK(s.suites.size() == 7);
    CHECK(s.total_checks() > 1000);
    for (const auto& suite : s.suites) CHECK(suite.checks > 0);
}

TEST_CASE("zero trials runs nothing and passes") {
    VerifyOptions opts;
    opts.trials = 0;
    const VerifySummary s = run_verification(opts);
    CHECK(s.passed());
    CHECK(s.total_checks() == 0);
    CHECK(render_text(s).find("all 0 checks passed") != std::string::npos);
}

TEST_CASE("negative trials are rejected") {
    VerifyOptions opts;
    opts.trials = -1;
    CHECK_THROWS_AS(run_verification(opts), InvalidArgument);
}

TEST_CASE("runs are deterministic per seed") {
    VerifyOptions opts;
    opts.seed = 7;
    opts.trials = 30;
    CHECK(to_json(run_verification(opts)) == to_json(run_verification(opts)));
}

TEST_CASE("an injected fault is caught and shrunk") {
    VerifyOptions opts;
    opts.seed = 3;
    opts.trials = 200;
    opts.fault = Fault::PerturbIterateC1;
    const VerifySummary s = run_verification(opts);
    REQUIRE_FALSE(s.passed());
    CHECK(s.failure->suite == "iterate-exponents-vs-words");
    const auto& in = s.failure->input;
    // The fault needs n >= 3 and c2 != 0; shrinking should land on the edge.
    CHECK(in.at("n").get<long>() == 3);
    CHECK(in.at("c2").get<long>() != 0);
    const auto j = to_json(s);
    CHECK(j.at("passed") == false);
    CHECK(j.contains("counterexample"));
}

TEST_CASE("json summary") {
    VerifyOptions opts;
    opts.trials = 5;
    const auto j = to_json(run_verification(opts));
    CHECK(j.at("passed") == true);
    CHECK(j.at("seed") == 1);
    CHECK(j.at("suites").size() == 7);
}

}
