#pragma once

/**
 * @file oracles.hpp
 * @brief Slow, independent reference computations used to cross-check the
 * closed forms: word-engine iteration, lattice-point counting, and a 2x2
 * Smith normal form for sublattice membership.
 */

#include "torusfix/group_words.hpp"
#include "torusfix/iterates.hpp"

#include <array>
#include <cstdint>

namespace torusfix {

/// Images of a, b, c under (f_#)^n, by n successive applications of apply_hom.
std::array<NormalForm, 3> iterate_images_by_words(const FiberedMapSpec& f, const BundleSpec& bundle, long n);

/// Reads (b3n, b4n, c1n, c2n) off the word images of f^n. Throws
/// InternalMismatch if the images are not of the normalized shape.
PowerExponents power_exponents_by_words(const FiberedMapSpec& f, const BundleSpec& bundle, long n);

/// Number of x in [0,1)^2 with M x in Z^2, by enumerating the integer points
/// of M [0,1)^2. Requires det M != 0 and entries small enough for 64-bit
/// arithmetic (checked; throws InvalidArgument).
std::int64_t count_lattice_fixed_points(const IntMatrix2& M);

/// U M V = diag(d1, d2) with U, V unimodular, d1 | d2, d1, d2 >= 0.
struct SmithForm {
    Integer d1{0};
    Integer d2{0};
    IntMatrix2 U;
    IntMatrix2 V;
};

SmithForm smith_normal_form(const IntMatrix2& M);

/// Is (x, y) in the lattice spanned by the columns of G?
bool in_column_lattice(const IntMatrix2& G, const Integer& x, const Integer& y);

}  // namespace torusfix
