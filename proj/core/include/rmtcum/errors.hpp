#pragma once

#include <stdexcept>
#include <string>

namespace rmtcum {

// Error taxonomy shared by every module.  Each subclass corresponds to one
// failure class surfaced through the public contracts.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Enumeration/evaluation would exceed a configured budget.
struct SizeError : Error {
    using Error::Error;
};

// A precondition requiring even cardinality failed.
struct ParityError : Error {
    using Error::Error;
};

// Two objects live over different ground sets / vertex sets.
struct DomainError : Error {
    using Error::Error;
};

// Structurally malformed input (non-pairing where a pairing is required, ...).
struct ShapeError : Error {
    using Error::Error;
};

// A documented operation precondition was violated.
struct ContractError : Error {
    using Error::Error;
};

// A required table entry (moment or cumulant order) is missing.
struct CompletenessError : Error {
    using Error::Error;
};

// Bad configuration: unknown name, unbound symbol, schema violation.
struct ConfigError : Error {
    using Error::Error;
};

// Degenerate variance: the normalized statistic is undefined.
struct ConditionC2Error : Error {
    using Error::Error;
};

// Higher-cumulant / CLT analysis requested for a non-self-adjoint polynomial.
struct ConditionC3Error : Error {
    using Error::Error;
};

// Iterative numeric routine failed to converge.
struct NumericError : Error {
    using Error::Error;
};

}  // namespace rmtcum
