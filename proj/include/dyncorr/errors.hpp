#pragma once

#include <stdexcept>
#include <string>

namespace dyncorr {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DYNCORR_DEFINE_ERROR(Name)        \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

DYNCORR_DEFINE_ERROR(BadDimension);
DYNCORR_DEFINE_ERROR(DimensionMismatch);
DYNCORR_DEFINE_ERROR(NotHermitian);
DYNCORR_DEFINE_ERROR(NoConvergence);
DYNCORR_DEFINE_ERROR(BadSubsystemIndex);
DYNCORR_DEFINE_ERROR(BadPermutation);
DYNCORR_DEFINE_ERROR(NotPositive);
DYNCORR_DEFINE_ERROR(NotUnitary);
DYNCORR_DEFINE_ERROR(InvariantViolation);
DYNCORR_DEFINE_ERROR(AsymmetricDimensions);
DYNCORR_DEFINE_ERROR(StepLimitExceeded);
DYNCORR_DEFINE_ERROR(TraceDrift);
DYNCORR_DEFINE_ERROR(PositivityLoss);
DYNCORR_DEFINE_ERROR(BracketFailure);
DYNCORR_DEFINE_ERROR(IoError);
DYNCORR_DEFINE_ERROR(FormatError);

#undef DYNCORR_DEFINE_ERROR

}  // namespace dyncorr
