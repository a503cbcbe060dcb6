#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "kurepa/special_functions.hpp"

namespace kurepa::cli {

// Exit codes (stable contract): 0 success, 1 usage/parse error,
// 2 pole at the requested argument, 3 self-test failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitPole = 2;
inline constexpr int kExitSelfTest = 3;

/// Parse a complex literal: `a`, `bi`, `a+bi`, `a-bi`, optional spaces,
/// plain decimal components.
std::optional<ComplexValue> parse_complex(const std::string& text);

/// Run the command-line front end; out/err receive what a terminal would.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace kurepa::cli
