#pragma once

#include <stdexcept>
#include <string>

namespace besselsum {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define BESSELSUM_DEFINE_ERROR(Name)            \
    class Name : public Error {                 \
    public:                                     \
        using Error::Error;                     \
    }

// special_functions
BESSELSUM_DEFINE_ERROR(TermBudgetExceeded);
BESSELSUM_DEFINE_ERROR(QuadratureNotConverged);

// lattice
BESSELSUM_DEFINE_ERROR(SingularBasis);
BESSELSUM_DEFINE_ERROR(NotIntegral);

// characters
BESSELSUM_DEFINE_ERROR(NotMultiplicative);
BESSELSUM_DEFINE_ERROR(WrongSupport);
BESSELSUM_DEFINE_ERROR(NotRootOfUnity);
BESSELSUM_DEFINE_ERROR(UnsupportedModulus);
BESSELSUM_DEFINE_ERROR(NotPrimitive);

// lattice_sums / theta
BESSELSUM_DEFINE_ERROR(DivisibilityViolation);
BESSELSUM_DEFINE_ERROR(TruncationFailure);
BESSELSUM_DEFINE_ERROR(BoundaryAmbiguity);

// codes
BESSELSUM_DEFINE_ERROR(EnumerationTooLarge);

// heat
BESSELSUM_DEFINE_ERROR(OutOfWindow);
BESSELSUM_DEFINE_ERROR(NotLatticePoint);
BESSELSUM_DEFINE_ERROR(StepTooLarge);
BESSELSUM_DEFINE_ERROR(NotCoprime);

#undef BESSELSUM_DEFINE_ERROR

} // namespace besselsum
