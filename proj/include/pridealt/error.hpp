#pragma once

#include <stdexcept>
#include <string>

namespace pridealt {

/// Malformed or invalid user input (bad word literal, schema violation,
/// unknown generator, failed validation).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input is well formed but lies outside what the classifier can decide.
class ScopeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A machine-checked invariant failed. Should never be raised.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An enumeration or rewriting budget was exhausted.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pridealt
