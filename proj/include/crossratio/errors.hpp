#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crossratio {

/// Base class for every error raised by the algebra engine.
class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public AlgebraError {
public:
    explicit DivisionByZero(const std::string& what = "division by zero") : AlgebraError(what) {}
};

/// Operands from two different fields or rings were combined.
class MismatchError : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

/// A precondition on the input domain does not hold (composite modulus,
/// unsupported characteristic, pole of a rational function, ...).
class DomainError : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

class ParseError : public AlgebraError {
public:
    ParseError(const std::string& what, std::size_t position)
        : AlgebraError(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace crossratio
