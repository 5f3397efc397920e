#pragma once

#include <stdexcept>
#include <string>

namespace pwcheck {

/// Base class for every failure raised by the library. The CLI maps
/// `exit_code()` straight to the process exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

#define PWCHECK_DEFINE_ERROR(Name, Code)                       \
  class Name : public Error {                                  \
   public:                                                     \
    using Error::Error;                                        \
    int exit_code() const noexcept override { return Code; }   \
  };

// Path too close to a branch point, loop radius too large, bad puncture.
PWCHECK_DEFINE_ERROR(GeometryError, 2)
// Adaptive refinement hit its depth cap.
PWCHECK_DEFINE_ERROR(QuadratureError, 2)
// Collinear periods, vanishing side, or coincident critical angles.
PWCHECK_DEFINE_ERROR(DegenerateTriangleError, 2)
// Projective point is not in the neighbourhood of the divisor at infinity.
PWCHECK_DEFINE_ERROR(NotNearInfinityError, 2)
// All three trace magnitudes coincide; no boundary point is selected.
PWCHECK_DEFINE_ERROR(AmbiguousPointError, 2)
// Barycentric triple off the boundary of the 2-simplex.
PWCHECK_DEFINE_ERROR(InvalidNervePointError, 2)
// Angle steps too large to certify a winding number.
PWCHECK_DEFINE_ERROR(UndersampledError, 3)
// Arc interior landed on the wrong nerve edge.
PWCHECK_DEFINE_ERROR(TheoremViolationError, 4)

#undef PWCHECK_DEFINE_ERROR

}  // namespace pwcheck
