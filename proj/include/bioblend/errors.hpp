#pragma once

#include <stdexcept>

namespace bioblend {

// Invalid argument passed to a library operation.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Bad user-facing configuration (CLI flags, duplicate stream labels).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem or HDF5 failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally invalid or incompatible input file.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated internal invariant; indicates a bug, not user error.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace bioblend
