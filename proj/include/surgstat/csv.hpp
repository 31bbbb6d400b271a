#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace surgstat::csv {

using Row = std::vector<std::string>;

/// Splits one CSV line (RFC 4180 quoting, no embedded newlines).
Row parse_line(std::string_view line);

/// Reads every non-empty line that does not start with '#'.
std::vector<Row> read_all(std::istream& in);

std::string escape(std::string_view field);
void write_row(std::ostream& out, const Row& row);

/// Shortest decimal that round-trips to the same double.
std::string format_exact(double v);
/// Fixed-point with `decimals` digits.
std::string format_fixed(double v, int decimals);

double parse_double(std::string_view field);

}  // namespace surgstat::csv
