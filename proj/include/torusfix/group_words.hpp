#pragma once

/**
 * @file group_words.hpp
 * @brief Normal forms in the fundamental group of the mapping torus MA.
 *
 * The group is <a, b, c | [a,b] = 1, c a c^-1 = a^a1 b^a2, c b c^-1 = a^a3 b^a4>,
 * i.e. Z^2 semidirect Z with c acting on fiber vectors through the gluing
 * matrix. Every element is uniquely a^p b^q c^r. Pushing c^k to the right
 * past a fiber element v replaces v by A^k v.
 *
 * This engine is deliberately naive (it multiplies out words letter by
 * letter) because it is the brute-force reference for the closed-form
 * iterate formulas.
 */

#include "torusfix/int_matrix.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace torusfix {

/// Gluing matrix A of the bundle MA = T x [0,1] / (v,0) ~ (Av,1).
struct BundleSpec {
    IntMatrix2 gluing;
};

/// Induced homomorphism on pi_1: a -> a^b1 b^b2, b -> a^b3 b^b4, c -> a^c1 b^c2 c.
struct FiberedMapSpec {
    IntMatrix2 fiber;  // [[b1, b3], [b2, b4]]
    Integer c1{0};
    Integer c2{0};

    friend bool operator==(const FiberedMapSpec&, const FiberedMapSpec&) = default;
};

/// Throws NonUnimodular unless |det A| = 1.
void require_unimodular(const BundleSpec& bundle);

enum class Generator : char { a = 'a', b = 'b', c = 'c' };

struct Letter {
    Generator gen;
    Integer exponent;

    friend bool operator==(const Letter&, const Letter&) = default;
};

inline constexpr std::size_t kDefaultWordCap = 10000;

/// Free word in a, b, c. Stored exponents are nonzero and adjacent equal
/// generators are merged.
class Word {
public:
    Word() = default;

    Word& append(Generator gen, const Integer& exponent);
    Word& append(const Word& other);

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    Word inverse() const;
    std::string to_string() const;

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Letter> letters_;
};

/// a^p b^q c^r.
struct NormalForm {
    Integer p{0};
    Integer q{0};
    Integer r{0};

    static NormalForm generator(Generator gen);
    IntVec2 fiber() const { return {p, q}; }
    Word to_word() const;
    std::string to_string() const;

    friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// Rewrites w as a^p b^q c^r. Throws NonUnimodular, WordTooLong.
NormalForm normalize(const Word& w, const BundleSpec& bundle, std::size_t max_letters = kDefaultWordCap);

/// Group product, computed by normalizing the concatenated words.
NormalForm multiply(const NormalForm& lhs, const NormalForm& rhs, const BundleSpec& bundle);
NormalForm invert(const NormalForm& x, const BundleSpec& bundle);
/// x^k by repeated squaring of normal forms.
NormalForm power(const NormalForm& x, const Integer& k, const BundleSpec& bundle);

/// Image of the generator under the induced homomorphism.
NormalForm image_of(Generator gen, const FiberedMapSpec& f);

/// f_#(a^p b^q c^r) = f_#(a)^p f_#(b)^q f_#(c)^r, normalized.
NormalForm apply_hom(const NormalForm& x, const FiberedMapSpec& f, const BundleSpec& bundle);

struct HomValidation {
    bool valid = false;
    bool matrices_commute = false;
    bool relations_respected = false;
    std::string violation;  // empty when valid
};

/// Checks AB = BA and, independently, that f_# maps each defining relator to
/// the identity. Throws InternalMismatch if the two checks disagree.
HomValidation validate_hom(const FiberedMapSpec& f, const BundleSpec& bundle);

}  // namespace torusfix
