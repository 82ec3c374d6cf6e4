#include "rsphere_cli/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rsphere/error.hpp"

namespace rsphere::cli {

namespace {

[[noreturn]] void parse_failure(const std::string &what) {
  throw Error(Errc::ParseError, what);
}

double finite_number(const nlohmann::json &v, const char *where) {
  if (!v.is_number())
    parse_failure(std::string(where) + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x))
    parse_failure(std::string(where) + " must be finite");
  return x;
}

Eigen::Index dimension(const nlohmann::json &doc, const char *key) {
  if (!doc.contains(key))
    parse_failure(std::string("missing field '") + key + "'");
  const auto &v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    parse_failure(std::string("'") + key + "' must be a non-negative integer");
  return static_cast<Eigen::Index>(v.get<long long>());
}

} // namespace

std::string format_exact(double value) {
  // "-0" would be read back as the integer 0 and lose its sign
  if (value == 0.0 && std::signbit(value))
    return "-0.0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  if (ec != std::errc())
    throw Error(Errc::InvalidArgument, "number formatting failed");
  return {buf, end};
}

std::string to_json(const ComplexMatrix &m) {
  std::string out = "{\"rows\": " + std::to_string(m.rows()) +
                    ", \"cols\": " + std::to_string(m.cols()) + ", \"data\": [";
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (r || c)
        out += ", ";
      out += "[" + format_exact(m(r, c).real()) + ", " + format_exact(m(r, c).imag()) + "]";
    }
  return out + "]}";
}

std::string to_json(const std::vector<ComplexMatrix> &list) {
  std::string out = "[";
  for (std::size_t k = 0; k < list.size(); ++k)
    out += (k ? ",\n " : "") + to_json(list[k]);
  return out + "]";
}

ComplexMatrix from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    parse_failure(e.what());
  }
  if (!doc.is_object())
    parse_failure("matrix document must be an object");
  const Eigen::Index rows = dimension(doc, "rows");
  const Eigen::Index cols = dimension(doc, "cols");
  if (!doc.contains("data") || !doc.at("data").is_array())
    parse_failure("'data' must be an array");
  const auto &data = doc.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    parse_failure("'data' holds " + std::to_string(data.size()) + " entries, expected " +
                  std::to_string(rows * cols));
  ComplexMatrix m(rows, cols);
  for (Eigen::Index k = 0; k < rows * cols; ++k) {
    const auto &entry = data.at(static_cast<std::size_t>(k));
    if (!entry.is_array() || entry.size() != 2)
      parse_failure("entry " + std::to_string(k) + " must be a [re, im] pair");
    m(k / cols, k % cols) =
        Complex(finite_number(entry[0], "real part"), finite_number(entry[1], "imaginary part"));
  }
  return m;
}

ComplexMatrix load_matrix(const std::string &source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{')
    return from_json(source);
  std::ifstream in(source);
  if (!in)
    parse_failure("cannot open '" + source + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

} // namespace rsphere::cli
