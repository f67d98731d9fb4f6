#pragma once

#include <stdexcept>
#include <string>

namespace gsteer {

// Base for all library errors. The CLI maps the concrete types onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input or a violated precondition (exit code 2).
class ValidationError : public Error {
public:
    using Error::Error;
};

class NotTwoColorable : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// No stabilizer element yields surjective side-local forms (exit code 3).
class NoCorrelationForm : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

} // namespace gsteer
