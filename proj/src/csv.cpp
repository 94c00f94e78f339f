#include "cbal/csv.hpp"

#include <charconv>

#include "cbal/errors.hpp"

namespace cbal::csv {

namespace {

// Splits one physical line. Quotes cover embedded commas; "" inside a
// quoted field is a literal quote.
std::vector<std::string> split_line(const std::string& line,
                                    const std::string& source,
                                    std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          cur += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      if (!cur.empty())
        raise(errc::malformed_csv, source + ":" + std::to_string(line_no) +
                                       ": stray quote inside field");
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted)
    raise(errc::malformed_csv,
          source + ":" + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  for (std::size_t k = 0; k < header.size(); ++k)
    if (header[k] == name) return k;
  raise(errc::unknown_column,
        source + ": required column '" + name + "' not found");
}

Table read(std::istream& in, const std::string& source) {
  Table table;
  table.source = source;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
      line.erase(0, 3);
    if (trim(line).empty()) continue;
    auto fields = split_line(line, source, line_no);
    for (auto& f : fields) f = trim(f);
    if (first) {
      table.header = std::move(fields);
      first = false;
      continue;
    }
    if (fields.size() != table.header.size())
      raise(errc::malformed_csv,
            source + ":" + std::to_string(line_no) + ": expected " +
                std::to_string(table.header.size()) + " fields, got " +
                std::to_string(fields.size()));
    table.rows.push_back(std::move(fields));
    table.line_numbers.push_back(line_no);
  }
  if (first)
    raise(errc::malformed_csv, source + ": missing header row");
  return table;
}

double parse_number(const std::string& field, const std::string& source,
                    std::size_t line) {
  std::string t = trim(field);
  const char* begin = t.c_str();
  const char* end = begin + t.size();
  if (begin != end && *begin == '+') ++begin;  // from_chars rejects leading +
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end)
    raise(errc::malformed_csv, source + ":" + std::to_string(line) +
                                   ": not a number: '" + field + "'");
  return value;
}

}  // namespace cbal::csv
