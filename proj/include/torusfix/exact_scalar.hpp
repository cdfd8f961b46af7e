#pragma once

/**
 * @file exact_scalar.hpp
 * @brief Exact arithmetic over the rationals and the quadratic field Q(sqrt 2).
 *
 * Integers are GMP integers throughout; iterate exponents grow like b4^n and
 * never fit in a machine word for long.
 *
 * ExactScalar is a + b*sqrt(2) with rational a, b. Since sqrt(2) is
 * irrational, a value is rational iff b == 0, which is what lets the
 * periodic-point solver turn "epsilon is irrational" into a decidable check.
 */

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace torusfix {

using Integer = mpz_class;

/// Canonical rational number: denominator > 0, gcd(|num|, den) = 1.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}
    Rational(const Integer& value) : value_(value) {}
    Rational(const Integer& num, const Integer& den);

    static Rational from_mpq(const mpq_class& q);

    Integer numerator() const { return value_.get_num(); }
    Integer denominator() const { return value_.get_den(); }
    const mpq_class& raw() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    Integer floor() const;
    Integer ceil() const;

    Rational operator-() const { return from_mpq(-value_); }
    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

    /// "p" for integers, "p/q" otherwise.
    std::string to_string() const;
    /// Accepts "p" or "p/q" with optional sign; throws ParseError.
    static Rational parse(std::string_view text);

private:
    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Element rat + quad*sqrt(2) of Q(sqrt 2).
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(long value) : rat_(value) {}
    ExactScalar(const Integer& value) : rat_(value) {}
    ExactScalar(Rational rat) : rat_(std::move(rat)) {}
    ExactScalar(Rational rat, Rational quad) : rat_(std::move(rat)), quad_(std::move(quad)) {}

    static ExactScalar sqrt2() { return {Rational(0), Rational(1)}; }

    const Rational& rat() const { return rat_; }
    const Rational& quad() const { return quad_; }

    bool is_zero() const { return rat_.is_zero() && quad_.is_zero(); }
    bool is_rational() const { return quad_.is_zero(); }
    bool is_integer() const { return quad_.is_zero() && rat_.is_integer(); }

    /// Exact sign of rat + quad*sqrt(2).
    int sign() const;

    /// Largest integer <= value, exact.
    Integer floor() const;
    /// Smallest integer >= value, exact.
    Integer ceil() const;

    /// rat - quad*sqrt(2).
    ExactScalar conjugate() const { return {rat_, -quad_}; }

    ExactScalar operator-() const { return {-rat_, -quad_}; }
    ExactScalar& operator+=(const ExactScalar& rhs);
    ExactScalar& operator-=(const ExactScalar& rhs);
    ExactScalar& operator*=(const ExactScalar& rhs);
    /// Throws DivisionByZero for a zero divisor.
    ExactScalar& operator/=(const ExactScalar& rhs);

    friend ExactScalar operator+(ExactScalar lhs, const ExactScalar& rhs) { return lhs += rhs; }
    friend ExactScalar operator-(ExactScalar lhs, const ExactScalar& rhs) { return lhs -= rhs; }
    friend ExactScalar operator*(ExactScalar lhs, const ExactScalar& rhs) { return lhs *= rhs; }
    friend ExactScalar operator/(ExactScalar lhs, const ExactScalar& rhs) { return lhs /= rhs; }

    friend bool operator==(const ExactScalar& lhs, const ExactScalar& rhs) {
        return lhs.rat_ == rhs.rat_ && lhs.quad_ == rhs.quad_;
    }
    /// Numeric order (total, since the embedding into R is injective).
    friend std::strong_ordering operator<=>(const ExactScalar& lhs, const ExactScalar& rhs);

    /// Canonical text: "p/q", "r/s*sqrt2" or "p/q+r/s*sqrt2" (integers print without "/1").
    std::string to_string() const;
    /// Inverse of to_string; also accepts "sqrt2", "-sqrt2", "3*sqrt2", whitespace.
    static ExactScalar parse(std::string_view text);

    /// Approximate value for display only.
    double approx() const;

private:
    Rational rat_;
    Rational quad_;
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& s);

/// value mod 1 in [0, 1).
ExactScalar frac(const ExactScalar& value);

}  // namespace torusfix
