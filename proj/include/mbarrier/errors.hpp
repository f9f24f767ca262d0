#pragma once

#include <stdexcept>
#include <string>

namespace mbarrier {

/// Argument outside the domain of an operation (bad time window, negative
/// price, invalid curve shape, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The closed form is not valid for this contract (strike below the
/// terminal barrier). Use the quadrature pricer instead.
class RegimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical oracle failed to reach the requested accuracy.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

}  // namespace mbarrier
