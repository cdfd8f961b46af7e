#include "torusfix/int_matrix.hpp"

#include "torusfix/errors.hpp"

namespace torusfix {

std::string IntMatrix2::to_string() const {
    return "[[" + m11.get_str() + "," + m12.get_str() + "],[" + m21.get_str() + "," + m22.get_str() + "]]";
}

std::ostream& operator<<(std::ostream& os, const IntMatrix2& m) { return os << m.to_string(); }

std::ostream& operator<<(std::ostream& os, const IntVec2& v) { return os << "(" << v.x << "," << v.y << ")"; }

IntMatrix2 inverse_unimodular(const IntMatrix2& m) {
    const Integer d = m.det();
    if (d == 1) return m.adjugate();
    if (d == -1) {
        const IntMatrix2 adj = m.adjugate();
        return {-adj.m11, -adj.m12, -adj.m21, -adj.m22};
    }
    throw NonUnimodular("matrix " + m.to_string() + " has determinant " + d.get_str());
}

IntMatrix2 power(const IntMatrix2& m, long k) {
    if (k < 0) return power(inverse_unimodular(m), -k);
    IntMatrix2 result = IntMatrix2::identity();
    IntMatrix2 base = m;
    unsigned long e = static_cast<unsigned long>(k);
    while (e != 0) {
        if (e & 1UL) result = result * base;
        e >>= 1;
        if (e != 0) base = base * base;
    }
    return result;
}

IntMatrix2 power(const IntMatrix2& m, const Integer& k) {
    if (k.fits_slong_p()) return power(m, k.get_si());
    if (sgn(k) < 0) return power(inverse_unimodular(m), Integer(-k));
    IntMatrix2 result = IntMatrix2::identity();
    IntMatrix2 base = m;
    Integer e = k;
    while (sgn(e) != 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = result * base;
        e >>= 1;
        if (sgn(e) != 0) base = base * base;
    }
    return result;
}

GcdResult extended_gcd(const Integer& a, const Integer& b) {
    GcdResult out;
    mpz_gcdext(out.g.get_mpz_t(), out.s.get_mpz_t(), out.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

Integer mod_floor(const Integer& value, const Integer& m) {
    Integer out;
    mpz_fdiv_r(out.get_mpz_t(), value.get_mpz_t(), m.get_mpz_t());
    return out;
}

}  // namespace torusfix
