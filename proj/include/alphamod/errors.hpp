#pragma once

#include <stdexcept>
#include <string>

namespace alphamod {

// Base class for all library errors. Subclasses carry no extra state; the
// type itself is the signal and the message names the offending quantity.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ALPHAMOD_ERROR(NAME)        \
  class NAME : public Error {       \
   public:                          \
    using Error::Error;             \
  }

ALPHAMOD_ERROR(DomainError);          // parameter outside mathematical domain
ALPHAMOD_ERROR(ConfigError);          // invalid run configuration / build request
ALPHAMOD_ERROR(GridOverflowError);    // function escapes the grid in space or frequency
ALPHAMOD_ERROR(CoveringGapError);     // window system fails to cover the band
ALPHAMOD_ERROR(IndexOutOfCovering);   // block index beyond the built covering
ALPHAMOD_ERROR(ShellOutOfCovering);   // dyadic shell beyond the covered band
ALPHAMOD_ERROR(InsufficientCovering); // function has energy outside the covered band
ALPHAMOD_ERROR(CoveringMismatch);     // family does not sit inside its designated window
ALPHAMOD_ERROR(KernelMeanZero);       // maximal-function kernel has (near) zero mean
ALPHAMOD_ERROR(DegenerateAtom);       // atom construction collapsed (resolution/projection)
ALPHAMOD_ERROR(DegenerateFit);        // scaling fit impossible (zero/negative data)

#undef ALPHAMOD_ERROR

}  // namespace alphamod
