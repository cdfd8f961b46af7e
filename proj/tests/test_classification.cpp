#include "doctest.h"
#include "helpers.hpp"

#include "torusfix/classification.hpp"
#include "torusfix/errors.hpp"
#include "torusfix/verify.hpp"

using namespace torusfix;
using namespace tfx_test;

TEST_SUITE("classification") {

TEST_CASE("fixed vector of B") {
    CHECK(eigenvector_one(M(1, 2, 0, 1)) == IntVec2{1, 0});
    CHECK(eigenvector_one(M(1, 0, 2, 1)) == IntVec2{0, 1});
    CHECK(eigenvector_one(M(3, -2, 2, -1)) == IntVec2{1, 1});
    CHECK_THROWS_AS(eigenvector_one(M(2, 1, 1, 1)), NoEigenvector);
    CHECK_THROWS_AS(eigenvector_one(M(1, 0, 0, 1)), IdentityMatrix);
}

TEST_CASE("basis completion") {
    const IntVec2 w1 = complete_basis({1, 0}, BundleSpec{M(1, 1, 0, 1)}, M(1, 2, 0, 1));
    CHECK(IntMatrix2::from_columns({1, 0}, w1).det() == 1);
    CHECK(complete_basis({0, 1}, BundleSpec{M(0, -1, 1, 0)}, M(1, 0, 1, 1)) == IntVec2{-1, 0});
    // det[v | Av] = -1 is fixed by negating Av.
    const IntVec2 w2 = complete_basis({0, 1}, BundleSpec{M(0, 1, 1, 0)}, M(1, 0, 1, 1));
    CHECK(w2 == IntVec2{-1, 0});
    const IntVec2 w3 = complete_basis({3, 5}, BundleSpec{M(1, 0, 0, 1)}, M(1, 0, 0, 1));
    CHECK(IntMatrix2::from_columns({3, 5}, w3).det() == 1);
    CHECK_THROWS_AS(complete_basis({2, 4}, BundleSpec{M(1, 0, 0, 1)}, M(1, 0, 0, 1)), InvalidArgument);
}

TEST_CASE("table rows") {
    const Classification ii = classify(BundleSpec{M(1, 1, 0, 1)}, {M(1, 2, 0, 1), 1, 1});
    CHECK(ii.case_tag == CaseTag::II);
    CHECK(ii.P == IntMatrix2::identity());
    CHECK(ii.a3() == 1);
    CHECK(ii.b3() == 2);
    CHECK(ii.b4() == 1);

    const Classification i = classify(BundleSpec{M(2, 1, 1, 1)}, {IntMatrix2::identity(), 3, 4});
    CHECK(i.case_tag == CaseTag::I);
    CHECK(i.P == IntMatrix2::identity());
    CHECK(i.c1t == 3);

    const Classification iv = classify(BundleSpec{M(-1, 2, 0, -1)}, {M(1, 1, 0, 1), 0, 0});
    CHECK(iv.case_tag == CaseTag::IV);
    CHECK(iv.a3() * (iv.b4() - 1) == 0);

    const Classification iii = classify(BundleSpec{M(1, 0, 0, -1)}, {M(1, 0, 0, 3), 0, 0});
    CHECK(iii.case_tag == CaseTag::III);

    const Classification v = classify(BundleSpec{M(-1, 2, 0, 1)}, {M(1, 2, 0, 3), 1, 2});
    CHECK(v.case_tag == CaseTag::V);
    CHECK(v.a3() == 2);
    CHECK(v.b3() == 2);
    CHECK(v.b4() == 3);
}

TEST_CASE("unclassifiable inputs carry a reason") {
    const Classification hyp = classify(BundleSpec{M(2, 1, 1, 1)}, {M(2, 1, 1, 1), 0, 0});
    CHECK(hyp.case_tag == CaseTag::Unclassifiable);
    CHECK(hyp.reason == "fiber restriction not deformable: det(B - I) = -1");

    const Classification noncommuting = classify(BundleSpec{M(-1, 0, 0, 1)}, {M(1, 1, 0, 1), 0, 0});
    CHECK_FALSE(noncommuting.classified());
    CHECK(noncommuting.reason.find("does not commute") != std::string::npos);

    const Classification singular = classify(BundleSpec{M(2, 0, 0, 1)}, {IntMatrix2::identity(), 0, 0});
    CHECK_FALSE(singular.classified());
    CHECK(singular.reason.find("determinant 2") != std::string::npos);
}

TEST_CASE("case tags parse and print") {
    for (CaseTag t : {CaseTag::I, CaseTag::II, CaseTag::III, CaseTag::IV, CaseTag::V, CaseTag::Unclassifiable}) {
        CHECK(parse_case_tag(to_string(t)) == t);
    }
    CHECK_THROWS_AS(parse_case_tag("VI"), ParseError);
}

TEST_CASE("conjugation invariants on random instances") {
    Rng rng(2024);
    int per_case[5] = {0, 0, 0, 0, 0};
    for (int trial = 0; trial < 1000; ++trial) {
        const RandomInstance inst = random_classified(rng);
        const Classification& c = inst.classification;
        REQUIRE(c.classified());
        ++per_case[static_cast<int>(c.case_tag)];
        CHECK(abs(c.P.det()) == 1);
        const IntMatrix2 Pi = inverse_unimodular(c.P);
        CHECK(c.P * inst.bundle.gluing * Pi == c.A1);
        CHECK(c.P * inst.map.fiber * Pi == c.B1);
        CHECK(c.P * IntVec2{inst.map.c1, inst.map.c2} == IntVec2{c.c1t, c.c2t});
        if (c.case_tag == CaseTag::I) continue;
        CHECK(c.B1.m11 == 1);
        CHECK(c.B1.m21 == 0);
        CHECK(c.A1.m21 == 0);
        const Integer lhs = c.a3() * (c.b4() - 1);
        switch (c.case_tag) {
            case CaseTag::II:
            case CaseTag::IV: CHECK(lhs == 0); break;
            case CaseTag::III: CHECK(lhs == -2 * c.b3()); break;
            case CaseTag::V: CHECK(lhs == 2 * c.b3()); break;
            default: break;
        }
        // Classifying the normal form again is a fixed point.
        const Classification again = classify(c.normalized_bundle(), c.normalized_map());
        CHECK(again.case_tag == c.case_tag);
        CHECK(again.B1 == c.B1);
    }
    for (int k = 0; k < 5; ++k) CHECK(per_case[k] > 100);
}

}
