#pragma once

/**
 * @file cli.hpp
 * @brief The torusfix command line: analyze, solve and verify.
 *
 * Exit codes: 0 success, 1 verification failure (or an internal
 * cross-check tripping), 2 invalid input, unclassifiable input or a map that
 * does not descend to the bundle.
 */

#include <ostream>

namespace torusfix {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInvalid = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace torusfix
