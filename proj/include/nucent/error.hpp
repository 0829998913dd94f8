#pragma once

#include <stdexcept>
#include <string>

namespace nucent {

/// Input outside an operation's domain (negative radius, unknown label, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure did not reach its tolerance or has no solution in
/// the requested region. The message carries the achieved value.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nucent
