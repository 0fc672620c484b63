#pragma once

#include <stdexcept>
#include <string>

namespace cedyn {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParameterOutOfDomain : Error {
  using Error::Error;
};
struct EvaluationEscaped : Error {
  using Error::Error;
};
struct DegenerateCritical : Error {
  using Error::Error;
};
struct NotIntervalMap : Error {
  using Error::Error;
};
struct ZeroDerivativeOnOrbit : Error {
  using Error::Error;
};
struct TailNotContracting : Error {
  using Error::Error;
};
struct OrbitTooShort : Error {
  using Error::Error;
};
struct InfiniteDistortion : Error {
  using Error::Error;
};
struct NotSpecial : Error {
  using Error::Error;
};
struct DuplicateCenters : Error {
  using Error::Error;
};
struct NoSegmentsFound : Error {
  using Error::Error;
};
struct NotInBoundaryClass : Error {
  using Error::Error;
};
struct GenerationFailed : Error {
  using Error::Error;
};
struct InvalidTheta : Error {
  using Error::Error;
};
struct InvalidConfig : Error {
  using Error::Error;
};

}  // namespace cedyn
