#pragma once

#include "torusfix/exact_scalar.hpp"
#include "torusfix/int_matrix.hpp"

#include <string>

namespace tfx_test {

inline torusfix::IntMatrix2 M(long r11, long r12, long r21, long r22) {
    return torusfix::IntMatrix2::from_rows(r11, r12, r21, r22);
}

inline torusfix::ExactScalar X(const std::string& text) { return torusfix::ExactScalar::parse(text); }

inline torusfix::Rational Q(long p, long q) { return torusfix::Rational(torusfix::Integer(p), torusfix::Integer(q)); }

inline std::string data_path(const std::string& name) { return std::string(TORUSFIX_TEST_DATA) + "/" + name; }

}  // namespace tfx_test
