#include "torusfix/group_words.hpp"

#include "torusfix/errors.hpp"

#include <algorithm>

namespace torusfix {

void require_unimodular(const BundleSpec& bundle) {
    if (!bundle.gluing.is_unimodular()) {
        throw NonUnimodular("gluing matrix " + bundle.gluing.to_string() + " has determinant " +
                            bundle.gluing.det().get_str());
    }
}

Word& Word::append(Generator gen, const Integer& exponent) {
    if (sgn(exponent) == 0) return *this;
    if (!letters_.empty() && letters_.back().gen == gen) {
        letters_.back().exponent += exponent;
        if (sgn(letters_.back().exponent) == 0) letters_.pop_back();
        return *this;
    }
    letters_.push_back({gen, exponent});
    return *this;
}

Word& Word::append(const Word& other) {
    for (const auto& letter : other.letters_) append(letter.gen, letter.exponent);
    return *this;
}

Word Word::inverse() const {
    Word out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.append(it->gen, -it->exponent);
    return out;
}

std::string Word::to_string() const {
    if (letters_.empty()) return "1";
    std::string out;
    for (const auto& letter : letters_) {
        out.push_back(static_cast<char>(letter.gen));
        if (letter.exponent != 1) out += "^" + letter.exponent.get_str();
    }
    return out;
}

NormalForm NormalForm::generator(Generator gen) {
    switch (gen) {
        case Generator::a: return {1, 0, 0};
        case Generator::b: return {0, 1, 0};
        case Generator::c: return {0, 0, 1};
    }
    return {};
}

Word NormalForm::to_word() const {
    Word w;
    w.append(Generator::a, p).append(Generator::b, q).append(Generator::c, r);
    return w;
}

std::string NormalForm::to_string() const {
    return "a^" + p.get_str() + " b^" + q.get_str() + " c^" + r.get_str();
}

NormalForm normalize(const Word& w, const BundleSpec& bundle, std::size_t max_letters) {
    require_unimodular(bundle);
    if (w.size() > max_letters) {
        throw WordTooLong("word has " + std::to_string(w.size()) + " letters, cap is " + std::to_string(max_letters));
    }
    // Invariant: the prefix read so far equals v * c^r, and twist = A^r.
    IntVec2 v{0, 0};
    Integer r = 0;
    IntMatrix2 twist = IntMatrix2::identity();
    for (const auto& letter : w.letters()) {
        switch (letter.gen) {
            case Generator::a:
                v = v + letter.exponent * twist.column1();
                break;
            case Generator::b:
                v = v + letter.exponent * twist.column2();
                break;
            case Generator::c:
                r += letter.exponent;
                twist = twist * power(bundle.gluing, letter.exponent);
                break;
        }
    }
    return {v.x, v.y, r};
}

NormalForm multiply(const NormalForm& lhs, const NormalForm& rhs, const BundleSpec& bundle) {
    Word w = lhs.to_word();
    w.append(rhs.to_word());
    return normalize(w, bundle);
}

NormalForm invert(const NormalForm& x, const BundleSpec& bundle) {
    return normalize(x.to_word().inverse(), bundle);
}

NormalForm power(const NormalForm& x, const Integer& k, const BundleSpec& bundle) {
    NormalForm base = sgn(k) < 0 ? invert(x, bundle) : x;
    Integer e = abs(k);
    NormalForm result;
    while (sgn(e) != 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = multiply(result, base, bundle);
        e >>= 1;
        if (sgn(e) != 0) base = multiply(base, base, bundle);
    }
    return result;
}

NormalForm image_of(Generator gen, const FiberedMapSpec& f) {
    switch (gen) {
        case Generator::a: return {f.fiber.m11, f.fiber.m21, 0};
        case Generator::b: return {f.fiber.m12, f.fiber.m22, 0};
        case Generator::c: return {f.c1, f.c2, 1};
    }
    return {};
}

NormalForm apply_hom(const NormalForm& x, const FiberedMapSpec& f, const BundleSpec& bundle) {
    const NormalForm pa = power(image_of(Generator::a, f), x.p, bundle);
    const NormalForm pb = power(image_of(Generator::b, f), x.q, bundle);
    const NormalForm pc = power(image_of(Generator::c, f), x.r, bundle);
    return multiply(multiply(pa, pb, bundle), pc, bundle);
}

HomValidation validate_hom(const FiberedMapSpec& f, const BundleSpec& bundle) {
    HomValidation out;
    if (!bundle.gluing.is_unimodular()) {
        out.violation = "gluing matrix " + bundle.gluing.to_string() + " is not unimodular";
        return out;
    }
    const IntMatrix2& A = bundle.gluing;
    const IntMatrix2& B = f.fiber;
    out.matrices_commute = (A * B == B * A);

    // Each relator must map to the identity under f_#.
    const NormalForm fa = image_of(Generator::a, f);
    const NormalForm fb = image_of(Generator::b, f);
    const NormalForm fc = image_of(Generator::c, f);
    const NormalForm fc_inv = invert(fc, bundle);
    const NormalForm identity{};

    const NormalForm commutator = multiply(multiply(fa, fb, bundle), invert(multiply(fb, fa, bundle), bundle), bundle);
    const NormalForm conj_a = multiply(multiply(fc, fa, bundle), fc_inv, bundle);
    const NormalForm want_a = multiply(power(fa, A.m11, bundle), power(fb, A.m21, bundle), bundle);
    const NormalForm conj_b = multiply(multiply(fc, fb, bundle), fc_inv, bundle);
    const NormalForm want_b = multiply(power(fa, A.m12, bundle), power(fb, A.m22, bundle), bundle);

    std::string relator_failure;
    if (commutator != identity) {
        relator_failure = "f_# does not preserve [a,b] = 1";
    } else if (conj_a != want_a) {
        relator_failure = "f_#(c a c^-1) = " + conj_a.to_string() + " but f_#(a^a1 b^a2) = " + want_a.to_string();
    } else if (conj_b != want_b) {
        relator_failure = "f_#(c b c^-1) = " + conj_b.to_string() + " but f_#(a^a3 b^a4) = " + want_b.to_string();
    }
    out.relations_respected = relator_failure.empty();

    if (out.matrices_commute != out.relations_respected) {
        throw InternalMismatch("commutation test (" + std::string(out.matrices_commute ? "AB=BA" : "AB!=BA") +
                               ") disagrees with relator test for A=" + A.to_string() + ", B=" + B.to_string());
    }
    out.valid = out.matrices_commute;
    if (!out.valid) {
        out.violation = "fiber matrix does not commute with gluing matrix: AB=" + (A * B).to_string() +
                        ", BA=" + (B * A).to_string() + "; " + relator_failure;
    }
    return out;
}

}  // namespace torusfix
