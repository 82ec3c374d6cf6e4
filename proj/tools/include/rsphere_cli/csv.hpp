#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rsphere::cli {

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

/// 12 significant digits, C locale, negative zero printed as 0.
std::string format_value(double value);

/// Header row, comma separators, LF after every row.
void write_csv(std::ostream &out, const SweepTable &table);

} // namespace rsphere::cli
