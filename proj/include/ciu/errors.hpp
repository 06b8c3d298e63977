#pragma once

#include <stdexcept>
#include <string>

namespace ciu {

// Bad user-supplied data: malformed CSV/JSON, schema mismatch, unreadable file.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A context value outside its declared feature range, or dimension mismatch.
struct RangeViolation : DataError {
    using DataError::DataError;
};

// Failure inside a computation (non-finite loss, budget exceeded, ...).
struct ComputationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Broken internal invariant: corrupt range estimate, y outside [cmin, cmax].
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

// Operation not applicable to the given model shape.
struct UnsupportedOperation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ciu
