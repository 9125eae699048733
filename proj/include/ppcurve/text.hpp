#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ppcurve {

// Shortest decimal string that parses back to exactly the same double.
std::string format_real(double x);

// Strict parse of a whole token (surrounding blanks allowed); throws
// InvalidParameter naming `what` on failure.
double parse_real(std::string_view token, std::string_view what);

std::vector<std::string_view> split(std::string_view s, char sep);

std::string_view trim(std::string_view s);

}  // namespace ppcurve
