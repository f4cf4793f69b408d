#pragma once

#include <stdexcept>
#include <string>

namespace spincoh {

// Invalid physical input (negative frequency, inconsistent quantum numbers, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A denominator collapsed below the guard threshold (guided-mode pole, degenerate interface).
class SingularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature ran out of budget; carries the partial estimate.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double partial, double rel_error)
        : std::runtime_error(what), partial_(partial), rel_error_(rel_error) {}
    double partial() const noexcept { return partial_; }
    double rel_error() const noexcept { return rel_error_; }

private:
    double partial_;
    double rel_error_;
};

// Root bracketing failed; carries the function values at both ends.
class BracketError : public std::runtime_error {
public:
    BracketError(const std::string& what, double f_lo, double f_hi)
        : std::runtime_error(what), f_lo_(f_lo), f_hi_(f_hi) {}
    double f_lo() const noexcept { return f_lo_; }
    double f_hi() const noexcept { return f_hi_; }

private:
    double f_lo_;
    double f_hi_;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace spincoh
