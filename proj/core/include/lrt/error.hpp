#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lrt {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// NaN or +-infinity in user-supplied coordinates.
class InvalidCoordinate : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::string reason)
        : Error("line " + std::to_string(line) + ": " + reason),
          line_(line), reason_(std::move(reason)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

} // namespace lrt
