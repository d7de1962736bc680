#pragma once

#include <stdexcept>
#include <string>

namespace drisk {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Unknown family name in a model specification.
class CatalogError : public std::invalid_argument {
public:
    explicit CatalogError(const std::string& what) : std::invalid_argument(what) {}
};

// Model pair does not satisfy the hypotheses of the requested expansion.
class RegimeError : public std::invalid_argument {
public:
    explicit RegimeError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure (quadrature, root finding) failed to reach its tolerance.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

// Malformed text input; line is 1-based, 0 when not applicable.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace drisk
