#pragma once

#include <stdexcept>
#include <string>

namespace lcdd {

// Thrown when two signals that must agree in shape do not.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when coefficient state violates a type invariant (e.g. alpha_bar_prev <= alpha_bar_cur).
class InvalidState : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// File parse failure; carries the byte offset where parsing stopped.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t byte_offset)
        : std::runtime_error(what + " (byte offset " + std::to_string(byte_offset) + ")"),
          offset_(byte_offset) {}
    std::size_t byte_offset() const { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace lcdd
