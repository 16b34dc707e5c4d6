#pragma once

// Minimal CSV output with round-trip number formatting.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace frackac::csv {

/// Shortest decimal that parses back to exactly `value`.
std::string format(double value);

/// Writes one comma-separated line terminated by '\n'. Fields are written as
/// given; callers pass plain names and formatted numbers.
void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Header helper: prefix1, prefix2, ..., prefix<count>.
std::vector<std::string> numbered(std::string_view prefix, int count);

}  // namespace frackac::csv
