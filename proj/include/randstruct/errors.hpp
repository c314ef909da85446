#pragma once

#include <stdexcept>
#include <string>

namespace rs {

// Bad argument to a sampler, solver or constructor.
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A statistical test that cannot be run meaningfully (too few cells or samples).
struct InvalidTest : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed encoding: a path or word outside the bijection class.
struct FormatError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Work budget exceeded (enumeration size, rejection attempts, particle cap).
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rs
