#pragma once

#include <stdexcept>
#include <string>

namespace kurepa {

// Argument sits on (or within tolerance of) a pole of the requested function.
class PoleError : public std::domain_error {
public:
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// Argument outside the domain contract of the operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Caller asked for the arg = -pi side of the negative real axis; every
// multivalued expression in this library is fixed to arg = +pi.
class BranchError : public std::domain_error {
public:
    explicit BranchError(const std::string& what) : std::domain_error(what) {}
};

// Series / continued fraction / quadrature failed to converge within budget.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace kurepa
