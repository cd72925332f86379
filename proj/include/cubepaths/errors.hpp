#pragma once

#include <stdexcept>
#include <string>

namespace cubepaths {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Face tables reference cells that do not exist, or have the wrong arity.
class MalformedComplex : public Error {
public:
    using Error::Error;
};

/// Text input (.pcs, .dpath, .pv) could not be parsed.
class ParseError : public Error {
public:
    /// A structural problem with no meaningful source position.
    explicit ParseError(const std::string& what)
        : Error(what)
        , line_(0)
        , column_(0)
    {
    }

    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what)
        , line_(line)
        , column_(column)
    {
    }

    /// 1-based; 0 when the error has no position.
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A d-path violates its invariants (monotonicity, gluing, range).
class InvalidPath : public Error {
public:
    using Error::Error;
};

/// An operation's documented precondition does not hold for its input.
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace cubepaths
