#pragma once

#include <cstddef>
#include <utility>
#include <stdexcept>
#include <string>

namespace isocone {

// A violated mathematical precondition or invariant. `invariant()` is a short
// stable tag such as "dimension", "not-positive" or "horizontal-edge".
class DomainError : public std::runtime_error {
public:
    DomainError(std::string invariant, const std::string& detail)
        : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

// Malformed input text. Line numbers are 1-based; 0 means "no particular line".
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& detail)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + detail : detail),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace isocone
