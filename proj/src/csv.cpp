#include "frackac/csv.hpp"

#include <array>
#include <charconv>
#include <ostream>

namespace frackac::csv {

std::string format(double value) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    (void)ec;
    return std::string(buf.data(), end);
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << fields[i];
    }
    out << '\n';
}

std::vector<std::string> numbered(std::string_view prefix, int count) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(count));
    for (int i = 1; i <= count; ++i) names.push_back(std::string(prefix) + std::to_string(i));
    return names;
}

}  // namespace frackac::csv
