#pragma once

#include <stdexcept>
#include <string>

namespace iwa {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input is zero modulo p^N, so no valuation-dependent answer exists.
class ZeroAtPrecision : public Error {
public:
    using Error::Error;
};

class WindowTooSmall : public Error {
public:
    using Error::Error;
};

class PrecisionMismatch : public Error {
public:
    using Error::Error;
};

class AlgebraMismatch : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at offset " + std::to_string(position) + ")"), message_(what), position_(position)
    {
    }
    std::size_t position() const { return position_; }
    const std::string& message() const { return message_; }

private:
    std::string message_;
    std::size_t position_;
};

class FlagError : public Error {
public:
    using Error::Error;
};

}  // namespace iwa
