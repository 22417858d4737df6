#pragma once

#include <string>

namespace radarint {

// Shortest decimal text that parses back to the same double. Infinity is
// written as "inf", which is how the CSV outputs encode an unbounded T_fail.
std::string format_double(double value);

// Inverse of format_double. Accepts "inf"/"-inf"; throws std::invalid_argument
// on anything that is not a complete number.
double parse_double(const std::string& text);

}  // namespace radarint
