#pragma once

#include <stdexcept>
#include <string>

namespace qpool {

// Base for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument / precondition violation.
struct DomainError : Error {
    using Error::Error;
};

// Filesystem failure while reading or writing an artifact.
struct IoError : Error {
    using Error::Error;
};

// floor_of_quotient hit its precision cap while the quotient interval still
// straddled an integer. Signals a possible exact-integer quotient.
struct AmbiguousFloor : Error {
    int precision_cap_bits;
    explicit AmbiguousFloor(int cap_bits)
        : Error("floor still ambiguous at precision cap of " + std::to_string(cap_bits) + " bits"),
          precision_cap_bits(cap_bits) {}
};

} // namespace qpool
