#pragma once
// Error taxonomy shared across the library. The CLI maps these onto exit
// codes: invalid-input errors -> 1, numerical errors -> 2.

#include <stdexcept>

namespace remsamp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// invalid input
struct InvalidConfig : Error { using Error::Error; };
struct OutOfRangeTime : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct BudgetExceedsGrid : Error { using Error::Error; };
struct BudgetTooSmall : Error { using Error::Error; };
struct SearchSpaceTooLarge : Error { using Error::Error; };

// numerical failure
struct NumericalFailure : Error { using Error::Error; };
struct DegenerateDenominator : Error { using Error::Error; };

}  // namespace remsamp
