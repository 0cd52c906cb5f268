#pragma once

#include <stdexcept>
#include <string>

namespace folia {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define FOLIA_DEFINE_ERROR(Name)                                \
  struct Name : Error {                                         \
    explicit Name(const std::string& m) : Error(#Name ": " + m) {} \
  }

FOLIA_DEFINE_ERROR(NotConnected);
FOLIA_DEFINE_ERROR(GenusTooSmall);
FOLIA_DEFINE_ERROR(NonPositiveWeight);
FOLIA_DEFINE_ERROR(UnsupportedCurve);
FOLIA_DEFINE_ERROR(NonPositiveScale);
FOLIA_DEFINE_ERROR(TargetTooCoarse);
FOLIA_DEFINE_ERROR(DegenerateTriangle);
FOLIA_DEFINE_ERROR(NewtonDiverged);
FOLIA_DEFINE_ERROR(NonConvergedTolerance);
FOLIA_DEFINE_ERROR(DegenerateEplusB);
FOLIA_DEFINE_ERROR(NotThroughFuchsian);
FOLIA_DEFINE_ERROR(NotLorentz);
FOLIA_DEFINE_ERROR(QuadratureFailure);
FOLIA_DEFINE_ERROR(UnknownKind);
FOLIA_DEFINE_ERROR(ParseError);

#undef FOLIA_DEFINE_ERROR

}  // namespace folia
