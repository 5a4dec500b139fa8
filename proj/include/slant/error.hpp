#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slant {

/// Error categories; the C API maps these one-to-one onto status codes.
enum class ErrorKind {
    Usage,     // invalid arguments or violated preconditions
    Parse,     // malformed expression or curve file
    Domain,    // ln/sqrt of a negative, division by zero, non-finite value
    Numeric,   // quadrature non-convergence, step control failure, non-unit speed
    Io,
    Internal
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Syntax or semantic error located in source text.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(ErrorKind::Parse, what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace slant
