#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pridealt {

inline constexpr std::string_view tool_version = "0.1.0";

/// Runs one command. args excludes the program name. Exit codes: 0 report
/// produced, 1 input or budget error, 2 internal verification failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);

} // namespace pridealt
