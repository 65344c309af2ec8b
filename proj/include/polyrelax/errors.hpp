#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyrelax {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- expression front end -------------------------------------------------

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t position)
        : Error(msg + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class LexError : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

class ParseError : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

// `^` with a non-constant exponent (the right subtree references x).
class NonConstantExponentError : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

// --- numeric / geometric failures ------------------------------------------

class NumericError : public Error {
public:
    using Error::Error;
};

// Elementary function evaluated outside its real domain (log(-1), ...).
class DomainError : public NumericError {
public:
    DomainError(const std::string& fn, double x)
        : NumericError(fn + " evaluated outside its domain at x=" + std::to_string(x)),
          fn_(fn), x_(x) {}

    const std::string& fn() const noexcept { return fn_; }
    double x() const noexcept { return x_; }

private:
    std::string fn_;
    double x_;
};

class NonFiniteError : public NumericError {
public:
    using NumericError::NumericError;
};

// Function is locally linear: end derivatives still equal after midpoint
// insertion, so no triangle can be formed.
class DegenerateFunctionError : public NumericError {
public:
    using NumericError::NumericError;
};

// Derivative-sign and midpoint-secant curvature tests disagree; usually a
// missed break point inside the queried subinterval.
class InconsistentCurvatureError : public NumericError {
public:
    using NumericError::NumericError;
};

// A midpoint coincides with an endpoint in floating point.
class NumericalCollapseError : public NumericError {
public:
    using NumericError::NumericError;
};

// Tangents at the two subinterval endpoints have (numerically) equal slope.
class ParallelTangentsError : public NumericError {
public:
    using NumericError::NumericError;
};

class EmptyChainError : public NumericError {
public:
    using NumericError::NumericError;
};

// All candidate hull points are collinear.
class DegenerateHullError : public NumericError {
public:
    using NumericError::NumericError;
};

class MaxIterationsError : public NumericError {
public:
    using NumericError::NumericError;
};

// Variable name unusable in the LP text format.
class NameClashError : public Error {
public:
    using Error::Error;
};

} // namespace polyrelax
