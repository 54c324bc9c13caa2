#include "shakebal/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace shakebal::csv {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    if (text == "nan") return std::nan("");
    if (text == "inf") return INFINITY;
    if (text == "-inf") return -INFINITY;
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last || first == last)
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    return v;
}

unsigned long long parse_unsigned(std::string_view text) {
    unsigned long long v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty())
        throw std::invalid_argument("not a non-negative integer: '" + std::string(text) + "'");
    return v;
}

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t begin = 0;
    while (true) {
        const std::size_t comma = line.find(',', begin);
        fields.emplace_back(line.substr(begin, comma - begin));
        if (comma == std::string_view::npos) break;
        begin = comma + 1;
    }
    return fields;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i].find_first_of(",\n\r\"") != std::string::npos)
            throw std::invalid_argument("csv field needs quoting: '" + fields[i] + "'");
        if (i) out << ',';
        out << fields[i];
    }
    out << '\n';
}

std::vector<std::vector<std::string>> read_rows(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(split_line(line));
    }
    return rows;
}

}  // namespace shakebal::csv
