#pragma once

/**
 * @file iterates.hpp
 * @brief Closed-form data of the n-th iterate of a normalized fibered map.
 *
 * For f_#(a) = a, f_#(b) = a^b3 b^b4, f_#(c) = a^c1 b^c2 c the n-th power is
 * again of this shape, with exponents built from two geometric-type sums
 *
 *   S(n) = sum_{i=0}^{n-1} b4^i,    W(n) = sum_{i=0}^{n-1} i b4^(n-1-i).
 */

#include "torusfix/group_words.hpp"

namespace torusfix {

struct GeometricSums {
    Integer s;  // sum b4^i, i < n
    Integer w;  // sum i * b4^(n-1-i), i < n

    friend bool operator==(const GeometricSums&, const GeometricSums&) = default;
};

/// Exact closed forms for b4 outside {-1, 0, 1}, direct summation otherwise.
GeometricSums geometric_sums(const Integer& b4, long n);
/// Always sums term by term (reference for the closed forms).
GeometricSums geometric_sums_direct(const Integer& b4, long n);

struct PowerExponents {
    Integer b3n, b4n, c1n, c2n;
    long n = 1;

    /// f^n as a fibered map with the same normalized shape.
    FiberedMapSpec as_map() const { return {IntMatrix2{1, b3n, 0, b4n}, c1n, c2n}; }

    friend bool operator==(const PowerExponents&, const PowerExponents&) = default;
};

/// Throws NotNormalized unless (b1, b2) = (1, 0), InvalidArgument for n < 1.
PowerExponents power_exponents(const FiberedMapSpec& f, long n);

/// |det(B^n - I)|, the Nielsen number of the fiber restriction of f^n.
Integer nielsen_fiber(const IntMatrix2& B, long n);

/// c1 (b4 - 1) - c2 b3.
Integer base_invariant(const FiberedMapSpec& f);

/// c1n (b4n - 1) - c2n b3n, computed from power_exponents and again as
/// n * base_invariant(f) * S(n). Throws InternalMismatch if they differ.
Integer key_invariant(const FiberedMapSpec& f, long n);

}  // namespace torusfix
