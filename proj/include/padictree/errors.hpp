#pragma once

#include <stdexcept>
#include <string>

namespace padictree {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scalar layer
struct DivisionByZero : Error { using Error::Error; };
struct PrecisionExhausted : Error { using Error::Error; };
struct NotASquare : Error { using Error::Error; };
struct OddValuation : Error { using Error::Error; };
struct NotAUnit : Error { using Error::Error; };
struct OutOfConvergenceDomain : Error { using Error::Error; };

// Matrix / tree layer
struct SingularMatrix : Error { using Error::Error; };
struct DegenerateFrame : Error { using Error::Error; };

// Group layer
struct NonHyperbolicGenerator : Error { using Error::Error; };
struct NoValidLabeling : Error { using Error::Error; };
struct NotStabilized : Error { using Error::Error; };
struct NotLimitPoints : Error { using Error::Error; };

// Orbit layer
struct FrontierBudgetExceeded : Error { using Error::Error; };
struct DegenerateBall : Error { using Error::Error; };
struct Inconclusive : Error { using Error::Error; };

// Surface layer
struct ConfigError : Error { using Error::Error; };
struct InternalError : Error { using Error::Error; };

} // namespace padictree
