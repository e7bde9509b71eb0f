#pragma once

#include <stdexcept>
#include <string>

namespace patchring {

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller violated an operation's precondition (non-unit input, chart
/// mismatch, center constraint, ...).
class precondition_error : public error {
public:
    using error::error;
};

/// Division by an exact zero scalar.
class division_by_zero : public error {
public:
    using error::error;
};

/// Scalars from incompatible fields were combined.
class field_mismatch : public error {
public:
    using error::error;
};

/// The requested configuration is not supported (e.g. a root of unity that
/// the base field does not contain).
class config_error : public error {
public:
    using error::error;
};

/// The unit recognizer did not find a unit pattern. This is NOT a proof
/// that the input is a non-unit.
class unit_not_recognized : public error {
public:
    using error::error;
};

/// A result cannot be decided at the working precision.
class precision_exhausted : public error {
public:
    using error::error;
};

/// An internal consistency check failed; indicates a bug.
class internal_error : public error {
public:
    using error::error;
};

} // namespace patchring
