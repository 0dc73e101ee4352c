// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace partsim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument or parameter outside its stated domain.
struct DomainError : Error {
    using Error::Error;
};

// A series or integral that does not converge for the given ensemble.
struct DivergenceError : Error {
    using Error::Error;
};

// A tolerance that cannot be certified within internal resource caps.
struct NumericsError : Error {
    using Error::Error;
};

// Enumeration size caps (exact oracles).
struct SizeError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

// Rejection sampling exceeded the configured trial budget.
struct RejectionTimeout : Error {
    long long trials;
    RejectionTimeout(const std::string& msg, long long t) : Error(msg), trials(t) {}
};

}  // namespace partsim
