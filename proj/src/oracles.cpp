#include "torusfix/oracles.hpp"

#include "torusfix/errors.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace torusfix {

std::array<NormalForm, 3> iterate_images_by_words(const FiberedMapSpec& f, const BundleSpec& bundle, long n) {
    if (n < 1) throw InvalidArgument("iterate count must be positive");
    std::array<NormalForm, 3> images{NormalForm::generator(Generator::a), NormalForm::generator(Generator::b),
                                     NormalForm::generator(Generator::c)};
    for (long i = 0; i < n; ++i) {
        for (auto& img : images) img = apply_hom(img, f, bundle);
    }
    return images;
}

PowerExponents power_exponents_by_words(const FiberedMapSpec& f, const BundleSpec& bundle, long n) {
    const auto images = iterate_images_by_words(f, bundle, n);
    const NormalForm& ia = images[0];
    const NormalForm& ib = images[1];
    const NormalForm& ic = images[2];
    if (ia != NormalForm{1, 0, 0} || sgn(ib.r) != 0 || ic.r != 1) {
        throw InternalMismatch("word images of f^" + std::to_string(n) + " are not normalized: a -> " +
                               ia.to_string() + ", b -> " + ib.to_string() + ", c -> " + ic.to_string());
    }
    PowerExponents out;
    out.n = n;
    out.b3n = ib.p;
    out.b4n = ib.q;
    out.c1n = ic.p;
    out.c2n = ic.q;
    return out;
}

namespace {

std::int64_t to_i64(const Integer& v) {
    if (!v.fits_slong_p()) throw InvalidArgument("entry " + v.get_str() + " too large for lattice enumeration");
    return v.get_si();
}

}  // namespace

std::int64_t count_lattice_fixed_points(const IntMatrix2& M) {
    const std::int64_t m11 = to_i64(M.m11), m12 = to_i64(M.m12), m21 = to_i64(M.m21), m22 = to_i64(M.m22);
    constexpr std::int64_t kLimit = std::int64_t{1} << 24;
    for (std::int64_t v : {m11, m12, m21, m22}) {
        if (v > kLimit || v < -kLimit) throw InvalidArgument("matrix entries too large for lattice enumeration");
    }
    std::int64_t det = m11 * m22 - m12 * m21;
    if (det == 0) throw InvalidArgument("singular matrix has infinitely many fixed points");
    // x = adj(M) z / det must lie in [0,1)^2.
    std::int64_t a11 = m22, a12 = -m12, a21 = -m21, a22 = m11;
    if (det < 0) {
        det = -det;
        a11 = -a11;
        a12 = -a12;
        a21 = -a21;
        a22 = -a22;
    }
    const std::int64_t xs[] = {0, m11, m12, m11 + m12};
    const std::int64_t ys[] = {0, m21, m22, m21 + m22};
    const auto [x_lo, x_hi] = std::minmax_element(std::begin(xs), std::end(xs));
    const auto [y_lo, y_hi] = std::minmax_element(std::begin(ys), std::end(ys));
    std::int64_t count = 0;
    for (std::int64_t z1 = *x_lo; z1 <= *x_hi; ++z1) {
        for (std::int64_t z2 = *y_lo; z2 <= *y_hi; ++z2) {
            const std::int64_t u = a11 * z1 + a12 * z2;
            const std::int64_t v = a21 * z1 + a22 * z2;
            if (u >= 0 && u < det && v >= 0 && v < det) ++count;
        }
    }
    return count;
}

SmithForm smith_normal_form(const IntMatrix2& M) {
    // Work on a 2x2 array with explicit row/column operations, tracking U and V.
    Integer m[2][2] = {{M.m11, M.m12}, {M.m21, M.m22}};
    Integer u[2][2] = {{1, 0}, {0, 1}};
    Integer v[2][2] = {{1, 0}, {0, 1}};

    auto row_swap = [&] {
        for (int j = 0; j < 2; ++j) {
            std::swap(m[0][j], m[1][j]);
            std::swap(u[0][j], u[1][j]);
        }
    };
    auto col_swap = [&] {
        for (int i = 0; i < 2; ++i) {
            std::swap(m[i][0], m[i][1]);
            std::swap(v[i][0], v[i][1]);
        }
    };
    // row_i -= q * row_k
    auto row_sub = [&](int i, int k, const Integer& q) {
        for (int j = 0; j < 2; ++j) {
            m[i][j] -= q * m[k][j];
            u[i][j] -= q * u[k][j];
        }
    };
    auto col_sub = [&](int j, int k, const Integer& q) {
        for (int i = 0; i < 2; ++i) {
            m[i][j] -= q * m[i][k];
            v[i][j] -= q * v[i][k];
        }
    };
    auto all_zero = [&] { return sgn(m[0][0]) == 0 && sgn(m[0][1]) == 0 && sgn(m[1][0]) == 0 && sgn(m[1][1]) == 0; };

    if (!all_zero()) {
        while (true) {
            // Move a nonzero entry of least absolute value to (0,0).
            int bi = -1, bj = -1;
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    if (sgn(m[i][j]) == 0) continue;
                    if (bi < 0 || abs(m[i][j]) < abs(m[bi][bj])) {
                        bi = i;
                        bj = j;
                    }
                }
            }
            if (bi == 1) row_swap();
            if (bj == 1) col_swap();
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), m[1][0].get_mpz_t(), m[0][0].get_mpz_t());
            row_sub(1, 0, q);
            mpz_fdiv_q(q.get_mpz_t(), m[0][1].get_mpz_t(), m[0][0].get_mpz_t());
            col_sub(1, 0, q);
            if (sgn(m[1][0]) != 0 || sgn(m[0][1]) != 0) continue;
            if (sgn(m[1][1]) != 0 && mpz_divisible_p(m[1][1].get_mpz_t(), m[0][0].get_mpz_t()) == 0) {
                // Fold row 2 into row 1 so the pivot must shrink.
                row_sub(0, 1, Integer(-1));
                continue;
            }
            break;
        }
    }
    for (int i = 0; i < 2; ++i) {
        if (sgn(m[i][i]) < 0) {
            for (int j = 0; j < 2; ++j) {
                m[i][j] = -m[i][j];
                u[i][j] = -u[i][j];
            }
        }
    }
    SmithForm out;
    out.d1 = m[0][0];
    out.d2 = m[1][1];
    out.U = {u[0][0], u[0][1], u[1][0], u[1][1]};
    out.V = {v[0][0], v[0][1], v[1][0], v[1][1]};
    return out;
}

bool in_column_lattice(const IntMatrix2& G, const Integer& x, const Integer& y) {
    // G Z^2 = U^-1 diag(d1, d2) Z^2, so (x, y) belongs iff U (x, y) lies in diag(d1, d2) Z^2.
    const SmithForm s = smith_normal_form(G);
    const IntVec2 w = s.U * IntVec2{x, y};
    auto divides = [](const Integer& d, const Integer& value) {
        if (sgn(d) == 0) return sgn(value) == 0;
        return mpz_divisible_p(value.get_mpz_t(), d.get_mpz_t()) != 0;
    };
    return divides(s.d1, w.x) && divides(s.d2, w.y);
}

}  // namespace torusfix
