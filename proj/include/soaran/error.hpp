#pragma once

#include <stdexcept>
#include <string>

namespace soaran {

// Base of every error raised by the library. Callers that do not care about
// the category can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SOARAN_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

SOARAN_DEFINE_ERROR(InvalidInstance);
SOARAN_DEFINE_ERROR(InfeasibleConfig);
SOARAN_DEFINE_ERROR(DimensionMismatch);
SOARAN_DEFINE_ERROR(UnknownReference);
SOARAN_DEFINE_ERROR(DomainError);
SOARAN_DEFINE_ERROR(NotInterior);
SOARAN_DEFINE_ERROR(EmptyInterior);
SOARAN_DEFINE_ERROR(TooLarge);
SOARAN_DEFINE_ERROR(ProjectionNotConverged);
SOARAN_DEFINE_ERROR(InvalidParams);
SOARAN_DEFINE_ERROR(ConfigError);
SOARAN_DEFINE_ERROR(SolverError);

#undef SOARAN_DEFINE_ERROR

}  // namespace soaran
