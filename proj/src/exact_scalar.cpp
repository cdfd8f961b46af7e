#include "torusfix/exact_scalar.hpp"

#include "torusfix/errors.hpp"

#include <cctype>
#include <string>

namespace torusfix {

namespace {

Integer parse_integer(std::string_view text, std::string_view context) {
    std::string digits(text);
    if (digits.empty()) throw ParseError("empty integer in '" + std::string(context) + "'");
    std::size_t start = (digits[0] == '+' || digits[0] == '-') ? 1 : 0;
    if (start == digits.size()) throw ParseError("bad integer in '" + std::string(context) + "'");
    for (std::size_t i = start; i < digits.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(digits[i]))) {
            throw ParseError("bad integer '" + digits + "' in '" + std::string(context) + "'");
        }
    }
    if (digits[0] == '+') digits.erase(0, 1);
    return Integer(digits);
}

// floor(sqrt(2) * p / q) for q > 0.
Integer floor_sqrt2_times(const Rational& r) {
    const Integer p = r.numerator();
    const Integer q = r.denominator();
    Integer two_p_sq = 2 * p * p;
    Integer root = sqrt(two_p_sq);  // floor, and sqrt(2p^2) is irrational for p != 0
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), root.get_mpz_t(), q.get_mpz_t());
    if (sgn(p) >= 0) return out;
    // p < 0: floor(-x) = -ceil(x) = -(floor(x) + 1) for irrational x
    return -out - 1;
}

}  // namespace

Rational::Rational(const Integer& num, const Integer& den) {
    if (sgn(den) == 0) throw DivisionByZero("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::from_mpq(const mpq_class& q) {
    Rational out;
    out.value_ = q;
    out.value_.canonicalize();
    return out;
}

Integer Rational::floor() const {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return out;
}

Integer Rational::ceil() const {
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw DivisionByZero("rational division by zero");
    value_ /= rhs.value_;
    return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
    if (is_integer()) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
    const Integer num = parse_integer(text.substr(0, slash), text);
    const Integer den = parse_integer(text.substr(slash + 1), text);
    if (sgn(den) == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

int ExactScalar::sign() const {
    const int sa = rat_.sign();
    const int sb = quad_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // Opposite signs: |a| vs |b|*sqrt(2), never equal for nonzero b.
    const Rational lhs = rat_ * rat_;
    const Rational rhs = Rational(2) * quad_ * quad_;
    return lhs > rhs ? sa : sb;
}

Integer ExactScalar::floor() const {
    if (is_rational()) return rat_.floor();
    Integer k = rat_.floor() + floor_sqrt2_times(quad_);
    while ((*this - ExactScalar(k)).sign() < 0) k -= 1;
    while ((*this - ExactScalar(Integer(k + 1))).sign() >= 0) k += 1;
    return k;
}

Integer ExactScalar::ceil() const {
    return -((-*this).floor());
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& rhs) {
    rat_ += rhs.rat_;
    quad_ += rhs.quad_;
    return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& rhs) {
    rat_ -= rhs.rat_;
    quad_ -= rhs.quad_;
    return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& rhs) {
    // (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r
    Rational a = rat_ * rhs.rat_ + Rational(2) * quad_ * rhs.quad_;
    Rational b = rat_ * rhs.quad_ + quad_ * rhs.rat_;
    rat_ = std::move(a);
    quad_ = std::move(b);
    return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& rhs) {
    if (rhs.is_zero()) throw DivisionByZero("exact scalar division by zero");
    // 1 / (c + d r) = (c - d r) / (c^2 - 2 d^2); the norm is nonzero for nonzero input
    const Rational norm = rhs.rat_ * rhs.rat_ - Rational(2) * rhs.quad_ * rhs.quad_;
    *this *= rhs.conjugate();
    rat_ /= norm;
    quad_ /= norm;
    return *this;
}

std::strong_ordering operator<=>(const ExactScalar& lhs, const ExactScalar& rhs) {
    const int s = (lhs - rhs).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string ExactScalar::to_string() const {
    if (quad_.is_zero()) return rat_.to_string();
    const std::string q = quad_.to_string() + "*sqrt2";
    if (rat_.is_zero()) return q;
    if (quad_.sign() < 0) return rat_.to_string() + q;
    return rat_.to_string() + "+" + q;
}

ExactScalar ExactScalar::parse(std::string_view text) {
    std::string compact;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
    }
    if (compact.empty()) throw ParseError("empty exact scalar");

    ExactScalar total;
    std::size_t pos = 0;
    while (pos < compact.size()) {
        std::size_t end = pos + 1;
        while (end < compact.size() && compact[end] != '+' && compact[end] != '-') ++end;
        std::string term = compact.substr(pos, end - pos);
        pos = end;

        bool negative = false;
        if (term[0] == '+' || term[0] == '-') {
            negative = term[0] == '-';
            term.erase(0, 1);
        }
        if (term.empty()) throw ParseError("dangling sign in '" + compact + "'");

        ExactScalar value;
        constexpr std::string_view kRoot = "sqrt2";
        if (term.size() >= kRoot.size() && term.compare(term.size() - kRoot.size(), kRoot.size(), kRoot) == 0) {
            std::string coef = term.substr(0, term.size() - kRoot.size());
            Rational c(1);
            if (!coef.empty()) {
                if (coef.back() != '*') throw ParseError("expected '*sqrt2' in '" + compact + "'");
                coef.pop_back();
                c = Rational::parse(coef);
            }
            value = ExactScalar(Rational(0), c);
        } else {
            value = ExactScalar(Rational::parse(term));
        }
        total += negative ? -value : value;
    }
    return total;
}

double ExactScalar::approx() const {
    return rat_.raw().get_d() + quad_.raw().get_d() * 1.4142135623730951;
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& s) { return os << s.to_string(); }

ExactScalar frac(const ExactScalar& value) { return value - ExactScalar(value.floor()); }

}  // namespace torusfix
