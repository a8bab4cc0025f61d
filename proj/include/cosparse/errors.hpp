#pragma once

#include <stdexcept>
#include <string>

namespace cosparse {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad dimensions, out-of-range parameters, malformed inputs.
struct InvalidArgument : Error {
    using Error::Error;
};

// Requested cosparsity/feasible solution does not exist.
struct InfeasibleError : Error {
    using Error::Error;
};

// Exhaustive enumeration would exceed the support cap.
struct EnumerationCapError : Error {
    using Error::Error;
};

// Bound constants undefined at the requested point (K1 <= 0 etc).
struct BoundUndefinedError : Error {
    using Error::Error;
};

// Config file problems: unknown key, unparsable value, missing required key.
struct ConfigError : Error {
    using Error::Error;
};

// File I/O failures.
struct IoError : Error {
    using Error::Error;
};

}  // namespace cosparse
