#include "surgstat/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "surgstat/error.hpp"

namespace surgstat::csv {

Row parse_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    Row row;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    if (quoted) fail(ErrorKind::MalformedInput, "unterminated quote in CSV line");
    row.push_back(std::move(field));
    return row;
}

std::vector<Row> read_all(std::istream& in) {
    std::vector<Row> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r" || line.front() == '#') continue;
        rows.push_back(parse_line(line));
    }
    return rows;
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        out << escape(row[i]);
    }
    out << '\n';
}

std::string format_exact(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int decimals) {
    if (std::isnan(v)) return "NA";
    char buf[64];
    // Avoid printing "-0.000" for tiny negatives.
    const double scale = std::pow(10.0, decimals);
    if (std::abs(v) * scale < 0.5) v = 0.0;
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

double parse_double(std::string_view field) {
    double v = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    while (first < last && *first == ' ') ++first;
    if (first < last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
        fail(ErrorKind::MalformedInput, "not a number: '" + std::string(field) + "'");
    }
    return v;
}

}  // namespace surgstat::csv
