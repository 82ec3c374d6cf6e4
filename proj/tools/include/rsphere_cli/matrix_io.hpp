#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rsphere/matfun.hpp"

namespace rsphere::cli {

/// Shortest decimal form is not used on purpose: every value is written with
/// 17 significant digits, which is enough to read back the same double.
std::string format_exact(double value);

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
std::string to_json(const ComplexMatrix &m);
std::string to_json(const std::vector<ComplexMatrix> &list);

/// Parses a matrix document; throws Error(ParseError) on malformed input.
ComplexMatrix from_json(std::string_view text);

/// `source` is either an inline document (first non-blank character '{')
/// or the path of a file holding one.
ComplexMatrix load_matrix(const std::string &source);

} // namespace rsphere::cli
