#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

namespace cbal::csv {

/// Parsed CSV contents: one header row plus data rows, all fields as text.
struct Table {
  std::string source;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row

  /// Index of a header column; raises unknown_column if absent.
  std::size_t column(const std::string& name) const;
};

/// Reads a comma-separated table. Accepts quoted fields, CRLF line ends and
/// a UTF-8 BOM; skips blank lines; raises malformed_csv on ragged rows.
Table read(std::istream& in, const std::string& source = "<stream>");

/// Strict numeric field parser. Decimal point only, optional exponent,
/// no thousands separators. Raises malformed_csv on anything else.
double parse_number(const std::string& field, const std::string& source,
                    std::size_t line);

}  // namespace cbal::csv
