#ifndef SCRIPTA_ERRORS_HPP
#define SCRIPTA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scripta {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File could not be opened or read.
struct IoError : Error {
    using Error::Error;
};

/// File opened but its contents are not a supported format (or are corrupt).
struct FormatError : Error {
    using Error::Error;
};

/// Input violates a precondition (empty sequence, out-of-range parameter, ...).
struct DataError : Error {
    using Error::Error;
};

} // namespace scripta

#endif
