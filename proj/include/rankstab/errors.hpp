#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace rankstab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mixing values from different ground fields.
class FieldMismatchError : public Error {
public:
    using Error::Error;
};

/// Shape problems: matrix sizes, tuple arities, ambient dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// DSL or JSON input rejected; carries source position for DSL text.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int col)
        : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
          line_(line), col_(col) {}
    explicit ParseError(const std::string& msg) : Error(msg), line_(0), col_(0) {}
    int line() const { return line_; }
    int column() const { return col_; }

private:
    int line_;
    int col_;
};

/// A stated operation precondition does not hold for the given input.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Input configuration that the underlying proof rules out.
class ImpossibleInputError : public Error {
public:
    using Error::Error;
};

/// Divisibility / congruence requirements of a composition failed.
class DimensionArithmeticError : public Error {
public:
    using Error::Error;
};

/// A stabilizer could not produce a verified exact solution.
class NotStabilizedError : public Error {
public:
    NotStabilizedError(const std::string& msg, std::map<std::string, std::string> diagnostics)
        : Error(msg), diagnostics_(std::move(diagnostics)) {}
    const std::map<std::string, std::string>& diagnostics() const { return diagnostics_; }

private:
    std::map<std::string, std::string> diagnostics_;
};

/// Violation of an internal invariant; indicates a bug, not bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace rankstab
