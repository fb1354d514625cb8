#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hshadow {

/// Input that violates a documented precondition (malformed gates, reducible
/// chain, non-train length function, ...). CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured size budget (word length, DP states, basis subsets) was hit.
/// CLI exit code 2.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Text input that does not follow the DSL grammar.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : ValidationError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace hshadow
