#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ratseries {

// Position is a 1-based character index into the source text; 0 means
// "no position attached".
class SyntaxError : public std::runtime_error {
public:
    explicit SyntaxError(const std::string& msg, std::size_t pos = 0)
        : std::runtime_error(pos ? "position " + std::to_string(pos) + ": " + msg : msg),
          pos_(pos) {}

    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

// Domain violations: zero pole values, mode mismatches, division by zero,
// malformed multiplicities.  Distinct from SyntaxError so callers can map
// the two classes to different exit codes.
class SemanticError : public std::runtime_error {
public:
    explicit SemanticError(const std::string& msg, std::size_t pos = 0)
        : std::runtime_error(pos ? "position " + std::to_string(pos) + ": " + msg : msg),
          pos_(pos) {}

    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

} // namespace ratseries
