#pragma once

#include <stdexcept>
#include <string>

namespace tscale {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point is not a member of the time scale, or a scale is malformed.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The operation needs t in T^kappa but t is the left-scattered maximum.
class KappaError : public Error {
public:
    using Error::Error;
};

/// A formula hit (or came within the guard margin of) a pole.
class SingularError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature or a runtime numerical assertion failed.
class ToleranceError : public Error {
public:
    using Error::Error;
};

/// A coefficient violates the regressivity class required by an operation.
class RegressivityError : public Error {
public:
    RegressivityError(const std::string& what, double t) : Error(what), t_(t) {}

    /// First offending point.
    double where() const noexcept { return t_; }

private:
    double t_;
};

/// A sampled function lacks the sample an operator needs (usually x at sigma(t)).
class GridError : public Error {
public:
    using Error::Error;
};

/// The operation is only defined on scales with constant graininess.
class ConstantGraininessError : public Error {
public:
    using Error::Error;
};

/// Malformed time-scale text.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Two components of a time-scale text intersect.
class OverlapError : public Error {
public:
    using Error::Error;
};

}  // namespace tscale
