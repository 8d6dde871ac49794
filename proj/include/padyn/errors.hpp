#pragma once

#include <stdexcept>
#include <string>

namespace padyn {

// Base class for everything the library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mixing scalars or series that live over different rings.
struct ConfigMismatchError : Error {
    explicit ConfigMismatchError(const std::string& msg) : Error(msg) {}
};

struct DivisionByZeroError : Error {
    explicit DivisionByZeroError(const std::string& msg) : Error(msg) {}
};

// A predicate needed to certify a digit (or non-vanishing) that the working
// precision cannot deliver.  Callers may retry at higher rel_precision.
struct PrecisionExhaustedError : Error {
    explicit PrecisionExhaustedError(const std::string& msg) : Error(msg) {}
};

struct NotAnMthPowerError : Error {
    explicit NotAnMthPowerError(const std::string& msg) : Error(msg) {}
};

// m-th roots with p | m would leave the unramified world.
struct UnsupportedRamifiedError : Error {
    explicit UnsupportedRamifiedError(const std::string& msg) : Error(msg) {}
};

// Input data contradicts a theorem that should hold for it (e.g. a Weierstrass
// degree that is not a p-power for a series with a stable commuter).
struct TheoremViolationError : Error {
    explicit TheoremViolationError(const std::string& msg) : Error(msg) {}
};

// build_u0 called with u'(0) not congruent to 1 modulo the maximal ideal.
struct NormalizationRequiredError : Error {
    explicit NormalizationRequiredError(const std::string& msg) : Error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Two routes that must agree disagreed, or an iteration diverged: a bug or a
// violated invariant, never a user error.
struct InternalInvariantError : Error {
    explicit InternalInvariantError(const std::string& msg) : Error(msg) {}
};

struct InputError : Error {
    explicit InputError(const std::string& msg) : Error(msg) {}
};

} // namespace padyn
