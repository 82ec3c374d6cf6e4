// Compares two CSV files written by the CLI: identical headers and row
// counts, LF line endings, and numbers equal to the 12 printed digits.
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

bool read_lines(const char *path, std::vector<std::string> &lines) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open " << path << '\n';
    return false;
  }
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      std::cerr << path << ": CR line ending\n";
      return false;
    }
    lines.push_back(line);
  }
  return true;
}

std::vector<std::string> fields(const std::string &line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(item);
  return out;
}

// One unit in the twelfth significant digit, plus an absolute floor for
// entries that are pure round-off.
bool close(double a, double b) {
  const double big = std::max(std::abs(a), std::abs(b));
  const double unit = big > 0.0 ? std::pow(10.0, std::floor(std::log10(big)) - 11.0) : 0.0;
  return std::abs(a - b) <= 1.5 * unit + 1e-13;
}

} // namespace

int main(int argc, char **argv) {
  if (argc != 3) {
    std::cerr << "usage: csv_compare expected actual\n";
    return 2;
  }
  std::vector<std::string> expected, actual;
  if (!read_lines(argv[1], expected) || !read_lines(argv[2], actual))
    return 1;
  if (expected.size() != actual.size() || expected.empty()) {
    std::cerr << "row count " << actual.size() << " vs " << expected.size() << '\n';
    return 1;
  }
  if (expected[0] != actual[0]) {
    std::cerr << "header '" << actual[0] << "' vs '" << expected[0] << "'\n";
    return 1;
  }
  for (std::size_t r = 1; r < expected.size(); ++r) {
    const auto e = fields(expected[r]), a = fields(actual[r]);
    if (e.size() != a.size()) {
      std::cerr << "row " << r << ": field count\n";
      return 1;
    }
    for (std::size_t c = 0; c < e.size(); ++c)
      if (!close(std::stod(e[c]), std::stod(a[c]))) {
        std::cerr << "row " << r << " column " << c << ": " << a[c] << " vs " << e[c] << '\n';
        return 1;
      }
  }
  return 0;
}
