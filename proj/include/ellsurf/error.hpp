#ifndef ELLSURF_ERROR_HPP
#define ELLSURF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ellsurf {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: syntax errors, off-curve points, bad manifests.
class InputError : public Error {
public:
    using Error::Error;
};

// Syntax error in an expression, with the 0-based character position.
class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t position)
        : InputError(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
    using Error::Error;
};

// A mathematical hypothesis of an operation does not hold for the given data
// (singular model, non-semistable curve, isotrivial family, ...).
class HypothesisError : public Error {
public:
    HypothesisError(std::string hypothesis, const std::string& detail)
        : Error(hypothesis + ": " + detail), hypothesis_(std::move(hypothesis)) {}
    const std::string& hypothesis() const noexcept { return hypothesis_; }

private:
    std::string hypothesis_;
};

// A computation finished but its result is not available within the given bounds.
class NotFound : public Error {
public:
    using Error::Error;
};

}  // namespace ellsurf

#endif
