#pragma once

/**
 * @file int_matrix.hpp
 * @brief 2x2 integer matrices and vectors acting on fiber coordinates.
 *
 * Matrices act on column vectors. A gluing matrix written in the usual
 * layout [[a1, a3], [a2, a4]] has m11 = a1, m12 = a3, m21 = a2, m22 = a4, so
 * its first column (a1, a2) is the image of the generator a and its second
 * column (a3, a4) the image of b.
 */

#include "torusfix/exact_scalar.hpp"

#include <ostream>
#include <string>

namespace torusfix {

struct IntVec2 {
    Integer x;
    Integer y;

    friend bool operator==(const IntVec2&, const IntVec2&) = default;
    friend IntVec2 operator+(const IntVec2& u, const IntVec2& v) { return {u.x + v.x, u.y + v.y}; }
    friend IntVec2 operator-(const IntVec2& u, const IntVec2& v) { return {u.x - v.x, u.y - v.y}; }
    friend IntVec2 operator*(const Integer& k, const IntVec2& v) { return {k * v.x, k * v.y}; }
    IntVec2 operator-() const { return {-x, -y}; }
    bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }
};

struct IntMatrix2 {
    Integer m11{1}, m12{0};
    Integer m21{0}, m22{1};

    static IntMatrix2 identity() { return {}; }
    /// From the usual display layout [[a1, a3], [a2, a4]].
    static IntMatrix2 from_rows(long r11, long r12, long r21, long r22) {
        return {Integer(r11), Integer(r12), Integer(r21), Integer(r22)};
    }
    /// Matrix whose columns are u and v.
    static IntMatrix2 from_columns(const IntVec2& u, const IntVec2& v) { return {u.x, v.x, u.y, v.y}; }

    Integer det() const { return m11 * m22 - m12 * m21; }
    Integer trace() const { return m11 + m22; }
    bool is_identity() const { return m11 == 1 && m12 == 0 && m21 == 0 && m22 == 1; }
    bool is_unimodular() const { return abs(det()) == 1; }
    IntVec2 column1() const { return {m11, m21}; }
    IntVec2 column2() const { return {m12, m22}; }

    /// adj(M), so M * adj(M) = det(M) * I.
    IntMatrix2 adjugate() const { return {m22, -m12, -m21, m11}; }

    friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
    friend IntMatrix2 operator*(const IntMatrix2& a, const IntMatrix2& b) {
        return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
                a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
    }
    friend IntMatrix2 operator+(const IntMatrix2& a, const IntMatrix2& b) {
        return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
    }
    friend IntMatrix2 operator-(const IntMatrix2& a, const IntMatrix2& b) {
        return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
    }
    friend IntVec2 operator*(const IntMatrix2& a, const IntVec2& v) {
        return {a.m11 * v.x + a.m12 * v.y, a.m21 * v.x + a.m22 * v.y};
    }

    std::string to_string() const;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix2& m);
std::ostream& operator<<(std::ostream& os, const IntVec2& v);

/// Exact inverse of a unimodular matrix, adj(M)/det(M). Throws NonUnimodular.
IntMatrix2 inverse_unimodular(const IntMatrix2& m);

/// M^k by repeated squaring; negative k requires M unimodular.
IntMatrix2 power(const IntMatrix2& m, long k);
/// M^k for k >= 0 given as an arbitrary-precision exponent.
IntMatrix2 power(const IntMatrix2& m, const Integer& k);

/// Extended Euclid: returns g = gcd(a, b) >= 0 with s*a + t*b = g.
struct GcdResult {
    Integer g, s, t;
};
GcdResult extended_gcd(const Integer& a, const Integer& b);

/// Mathematical residue in [0, m) for m > 0.
Integer mod_floor(const Integer& value, const Integer& m);
inline bool is_even(const Integer& value) { return mpz_even_p(value.get_mpz_t()) != 0; }
inline bool is_odd(const Integer& value) { return !is_even(value); }

}  // namespace torusfix
