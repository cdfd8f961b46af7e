#include "torusfix/iterates.hpp"

#include "torusfix/errors.hpp"

namespace torusfix {

namespace {

void require_positive(long n) {
    if (n < 1) throw InvalidArgument("iterate count must be positive, got " + std::to_string(n));
}

void require_normalized(const FiberedMapSpec& f) {
    if (f.fiber.m11 != 1 || sgn(f.fiber.m21) != 0) {
        throw NotNormalized("expected f_#(a) = a, got (b1, b2) = (" + f.fiber.m11.get_str() + ", " +
                            f.fiber.m21.get_str() + ")");
    }
}

Integer int_pow(const Integer& base, long e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return out;
}

Integer exact_div(const Integer& num, const Integer& den) {
    Integer out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

}  // namespace

GeometricSums geometric_sums_direct(const Integer& b4, long n) {
    require_positive(n);
    GeometricSums out{0, 0};
    Integer term = 1;  // b4^i
    for (long i = 0; i < n; ++i) {
        out.s += term;
        term *= b4;
    }
    // Horner: after step i, w = sum_{j <= i} j b4^(i-j).
    for (long i = 0; i < n; ++i) out.w = out.w * b4 + i;
    return out;
}

GeometricSums geometric_sums(const Integer& b4, long n) {
    require_positive(n);
    if (b4 == 0 || b4 == 1 || b4 == -1) return geometric_sums_direct(b4, n);
    const Integer m = b4 - 1;
    const Integer p = int_pow(b4, n);
    return {exact_div(p - 1, m), exact_div(p - n * b4 + n - 1, m * m)};
}

PowerExponents power_exponents(const FiberedMapSpec& f, long n) {
    require_normalized(f);
    const Integer& b3 = f.fiber.m12;
    const Integer& b4 = f.fiber.m22;
    const GeometricSums g = geometric_sums(b4, n);
    PowerExponents out;
    out.n = n;
    out.b3n = b3 * g.s;
    out.b4n = int_pow(b4, n);
    out.c1n = n * f.c1 + b3 * f.c2 * g.w;
    out.c2n = f.c2 * g.s;
    return out;
}

Integer nielsen_fiber(const IntMatrix2& B, long n) {
    require_positive(n);
    return abs((power(B, n) - IntMatrix2::identity()).det());
}

Integer base_invariant(const FiberedMapSpec& f) {
    return f.c1 * (f.fiber.m22 - 1) - f.c2 * f.fiber.m12;
}

Integer key_invariant(const FiberedMapSpec& f, long n) {
    const PowerExponents pe = power_exponents(f, n);
    const Integer direct = pe.c1n * (pe.b4n - 1) - pe.c2n * pe.b3n;
    const Integer factored = n * base_invariant(f) * geometric_sums(f.fiber.m22, n).s;
    if (direct != factored) {
        throw InternalMismatch("key invariant mismatch at n=" + std::to_string(n) + ": " + direct.get_str() +
                               " vs " + factored.get_str());
    }
    return direct;
}

}  // namespace torusfix
