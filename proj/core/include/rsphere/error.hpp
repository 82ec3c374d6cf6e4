#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsphere {

/// Failure categories raised by the library. Every throwing operation
/// reports exactly one of these through rsphere::Error.
enum class Errc {
  NotHermitian,
  SpectrumOutOfDomain,
  NotUnitary,
  SpectrumTouchesMinusOne,
  DimensionMismatch,
  NotInSphere,
  TopBlockSingular,
  NotInChart,
  NotSameFiber,
  NotTangent,
  NotCodiagonal,
  NotProjection,
  MobiusPole,
  OutsideLogDomain,
  ProjectionsTooFar,
  PathTooCoarse,
  NotRsp,
  ParameterOutOfRange,
  TraceMismatch,
  NoGeodesicFound,
  KernelMismatch,
  IndexNonZero,
  ParseError,
  InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string &detail);

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errc_name(code_); }

private:
  Errc code_;
};

} // namespace rsphere
