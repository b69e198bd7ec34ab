#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace maxsurf {

using Complex = std::complex<double>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Lexical or grammatical problem in an expression string.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : Error(msg + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_ = 0;
};

// Division by zero or a non-finite value during pointwise evaluation.
class EvalError : public Error {
public:
    using Error::Error;
};

// A mathematical precondition does not hold (degenerate metric, K <= |kappa|, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Requested quadrature accuracy could not be reached.
class QuadratureError : public Error {
public:
    using Error::Error;
};

}  // namespace maxsurf
