#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace saii {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidCharacter : public Error {
public:
    InvalidCharacter(std::size_t position, char ch)
        : Error("invalid character '" + std::string(1, ch) + "' at position " +
                std::to_string(position)),
          position_(position),
          ch_(ch) {}

    std::size_t position() const noexcept { return position_; }
    char character() const noexcept { return ch_; }

private:
    std::size_t position_;
    char ch_;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class MissingSuffixArray : public Error {
public:
    MissingSuffixArray() : Error("index carries no suffix array") {}
};

class CapacityExceeded : public Error {
public:
    CapacityExceeded(std::size_t length, std::size_t limit)
        : Error("text length " + std::to_string(length) + " exceeds capacity " +
                std::to_string(limit)) {}
};

class EmptyText : public Error {
public:
    EmptyText() : Error("text is empty") {}
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

// Malformed, truncated or corrupted serialized index.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace saii
