#pragma once

#include <stdexcept>
#include <string>

namespace ncm {

/// Raised when an argument violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a request exceeds a hard-coded desk-scale limit.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// An internal cross-check disagreed. Always a bug, never user error.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Always-on check, never compiled out.
inline void require(bool cond, const std::string& what) {
    if (!cond) throw PreconditionError(what);
}

inline void ensure(bool cond, const std::string& what) {
    if (!cond) throw InvariantViolation(what);
}

}  // namespace ncm
