#pragma once

#include <stdexcept>

namespace randsum {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Basis prefactor cannot be represented in double precision.
struct DegreeTooLarge : Error { using Error::Error; };

// Every basis value vanished; the kernel sums carry no information.
struct AllZero : Error { using Error::Error; };

// A quantity that is only meaningful on the real axis was requested at a
// point whose kernels are visibly off-axis.
struct NotOnAxis : Error { using Error::Error; };

// D0/B0 fell below the axis band; the plane-density formulas do not apply.
struct OnVanishingSet : Error { using Error::Error; };

struct UnsupportedFamily : Error { using Error::Error; };

// A computed value violated a structural guarantee by more than roundoff.
struct NumericalInconsistency : Error { using Error::Error; };

struct ContourTooCloseToAxis : Error { using Error::Error; };

// Root iteration failed to reach tolerance within the sweep budget.
struct NoConvergence : Error { using Error::Error; };

// Too many trials were discarded for non-convergence.
struct UnstableFamily : Error { using Error::Error; };

struct TooFewTrials : Error { using Error::Error; };

// Cholesky pivot vanished at a point where it must be positive.
struct SingularPivot : Error { using Error::Error; };

struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace randsum
