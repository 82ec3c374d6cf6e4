#include "rsphere_cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace rsphere::cli {

void SweepTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw std::logic_error("row width differs from the header");
  rows.push_back(std::move(row));
}

std::string format_value(double value) {
  if (value == 0.0)
    return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  if (ec != std::errc())
    throw std::runtime_error("number formatting failed");
  return {buf, end};
}

void write_csv(std::ostream &out, const SweepTable &table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto &row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << format_value(row[c]);
    out << '\n';
  }
}

} // namespace rsphere::cli
