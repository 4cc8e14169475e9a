#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mskrock {

/// Plain comma-separated table with a header row. Fields never contain commas,
/// quotes or newlines; lines end with LF.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const; ///< throws InputError if absent
  double number(std::size_t row, const std::string& name) const;
  void add_row(std::vector<std::string> fields);
};

/// Shortest decimal text that reads back to the same double ("%.17g"), locale-free.
std::string format_double(double v);
double parse_double(const std::string& s);

void write_csv(std::ostream& out, const CsvTable& t);
void write_csv(const std::string& path, const CsvTable& t);
CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::string& path);

} // namespace mskrock
