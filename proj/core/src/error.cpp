#include "rsphere/error.hpp"

namespace rsphere {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
  case Errc::NotHermitian: return "NotHermitian";
  case Errc::SpectrumOutOfDomain: return "SpectrumOutOfDomain";
  case Errc::NotUnitary: return "NotUnitary";
  case Errc::SpectrumTouchesMinusOne: return "SpectrumTouchesMinusOne";
  case Errc::DimensionMismatch: return "DimensionMismatch";
  case Errc::NotInSphere: return "NotInSphere";
  case Errc::TopBlockSingular: return "TopBlockSingular";
  case Errc::NotInChart: return "NotInChart";
  case Errc::NotSameFiber: return "NotSameFiber";
  case Errc::NotTangent: return "NotTangent";
  case Errc::NotCodiagonal: return "NotCodiagonal";
  case Errc::NotProjection: return "NotProjection";
  case Errc::MobiusPole: return "MobiusPole";
  case Errc::OutsideLogDomain: return "OutsideLogDomain";
  case Errc::ProjectionsTooFar: return "ProjectionsTooFar";
  case Errc::PathTooCoarse: return "PathTooCoarse";
  case Errc::NotRsp: return "NotRsp";
  case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
  case Errc::TraceMismatch: return "TraceMismatch";
  case Errc::NoGeodesicFound: return "NoGeodesicFound";
  case Errc::KernelMismatch: return "KernelMismatch";
  case Errc::IndexNonZero: return "IndexNonZero";
  case Errc::ParseError: return "ParseError";
  case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string &detail)
    : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
      code_(code) {}

} // namespace rsphere
