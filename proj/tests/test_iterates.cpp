#include "doctest.h"
#include "helpers.hpp"

#include "torusfix/errors.hpp"
#include "torusfix/iterates.hpp"
#include "torusfix/oracles.hpp"
#include "torusfix/verify.hpp"

using namespace torusfix;
using namespace tfx_test;

namespace {

FiberedMapSpec normalized(long b3, long b4, long c1, long c2) { return {M(1, b3, 0, b4), c1, c2}; }

}  // namespace

TEST_SUITE("iterates") {

TEST_CASE("exponents of small iterates") {
    const PowerExponents e2 = power_exponents(normalized(2, 3, 1, 1), 2);
    CHECK(e2 == PowerExponents{8, 9, 4, 4, 2});
    const FiberedMapSpec f = normalized(-1, 4, 2, -3);
    const PowerExponents e1 = power_exponents(f, 1);
    CHECK(e1.as_map() == f);
    CHECK(power_exponents(normalized(1, 1, 0, 1), 3) == PowerExponents{3, 1, 3, 3, 3});
}

TEST_CASE("exponents need a normalized map and positive n") {
    CHECK_THROWS_AS(power_exponents({M(2, 0, 0, 1), 0, 0}, 2), NotNormalized);
    CHECK_THROWS_AS(power_exponents({M(1, 0, 1, 1), 0, 0}, 2), NotNormalized);
    CHECK_THROWS_AS(power_exponents(normalized(0, 1, 0, 0), 0), InvalidArgument);
}

TEST_CASE("large exponents stay exact") {
    const PowerExponents e = power_exponents(normalized(1, 3, 1, 1), 200);
    Integer expected;
    mpz_ui_pow_ui(expected.get_mpz_t(), 3, 200);
    CHECK(e.b4n == expected);
    CHECK(e.b3n == (expected - 1) / 2);
}

TEST_CASE("geometric sums: closed forms against term-by-term sums") {
    for (long b4 = -6; b4 <= 6; ++b4) {
        for (long n = 1; n <= 30; ++n) {
            CHECK(geometric_sums(b4, n) == geometric_sums_direct(b4, n));
        }
    }
    CHECK(geometric_sums(-1, 4) == GeometricSums{0, 2});
    CHECK(geometric_sums(1, 5) == GeometricSums{5, 10});
    CHECK(geometric_sums(0, 3) == GeometricSums{1, 2});
}

TEST_CASE("closed form against the word engine") {
    Rng rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const FiberedMapSpec f =
            normalized(uniform(rng, -5, 5), uniform(rng, -5, 5), uniform(rng, -5, 5), uniform(rng, -5, 5));
        const long n = uniform(rng, 1, 12);
        // Gluing twists do not change images of f^n, so any commuting A works.
        CHECK(power_exponents(f, n) == power_exponents_by_words(f, BundleSpec{IntMatrix2::identity()}, n));
    }
}

TEST_CASE("closed form on conjugated instances") {
    Rng rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        const RandomInstance inst = random_classified(rng);
        const Classification& c = inst.classification;
        if (c.case_tag == CaseTag::I) continue;
        const long n = uniform(rng, 1, 8);
        CHECK(power_exponents(c.normalized_map(), n) ==
              power_exponents_by_words(c.normalized_map(), c.normalized_bundle(), n));
    }
}

TEST_CASE("Nielsen number of the fiber restriction") {
    CHECK(nielsen_fiber(M(2, 1, 1, 1), 1) == 1);
    CHECK(nielsen_fiber(M(2, 1, 1, 1), 2) == 5);
    for (long n = 1; n <= 6; ++n) CHECK(nielsen_fiber(IntMatrix2::identity(), n) == 0);
    CHECK(nielsen_fiber(M(1, 7, 0, 1), 4) == 0);
    CHECK(count_lattice_fixed_points(M(4, 3, 3, 1)) == 5);
    CHECK(count_lattice_fixed_points(M(2, 0, 0, 3)) == 6);
    CHECK(count_lattice_fixed_points(M(-1, 0, 0, -1)) == 1);
}

TEST_CASE("Nielsen number against lattice counting") {
    Rng rng(33);
    int counted = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const IntMatrix2 B = M(uniform(rng, -3, 3), uniform(rng, -3, 3), uniform(rng, -3, 3), uniform(rng, -3, 3));
        const long n = uniform(rng, 1, 4);
        const IntMatrix2 K = power(B, n) - IntMatrix2::identity();
        if (sgn(K.det()) == 0) continue;
        ++counted;
        CHECK(Integer(count_lattice_fixed_points(K)) == nielsen_fiber(B, n));
    }
    CHECK(counted > 200);
}

TEST_CASE("key invariant") {
    CHECK(key_invariant(normalized(1, 2, 1, 1), 2) == 0);
    CHECK(key_invariant(normalized(0, 2, 1, 0), 2) == 6);
    CHECK(base_invariant(normalized(2, 1, 1, 1)) == -2);
    Rng rng(34);
    for (int trial = 0; trial < 200; ++trial) {
        const long b3 = uniform(rng, -4, 4), b4 = uniform(rng, -4, 4), t = uniform(rng, -3, 3);
        // c proportional to (b3, b4 - 1) makes the invariant vanish for every n.
        const FiberedMapSpec f = normalized(b3, b4, t * b3, t * (b4 - 1));
        const long n = uniform(rng, 1, 10);
        CHECK(key_invariant(f, n) == 0);
        const PowerExponents e = power_exponents(f, n);
        CHECK(e.c1n * (e.b4n - 1) - e.c2n * e.b3n == 0);
    }
}

TEST_CASE("smith normal form") {
    for (const IntMatrix2& m : {M(1, 0, 2, 4), M(2, 0, 0, 2), M(4, 6, 2, 8), M(0, 0, 0, 0), M(3, 5, 7, 9)}) {
        const SmithForm s = smith_normal_form(m);
        CHECK(abs(s.U.det()) == 1);
        CHECK(abs(s.V.det()) == 1);
        CHECK(s.U * m * s.V == IntMatrix2{s.d1, 0, 0, s.d2});
        if (sgn(s.d1) != 0) CHECK(mpz_divisible_p(s.d2.get_mpz_t(), s.d1.get_mpz_t()) != 0);
        CHECK(s.d1 * s.d2 == abs(m.det()));
    }
    CHECK(in_column_lattice(M(1, 0, 2, 4), 1, 2));
    CHECK_FALSE(in_column_lattice(M(1, 0, 2, 4), 0, 1));
    CHECK(in_column_lattice(M(2, 0, 0, 2), 2, 2));
    CHECK_FALSE(in_column_lattice(M(2, 0, 0, 2), 2, 1));
}

}
