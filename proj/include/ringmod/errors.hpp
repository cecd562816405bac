#pragma once

#include <stdexcept>
#include <string>

namespace ringmod {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter violates the documented constraint of the operation.
class ValidationError : public Error {
public:
    ValidationError(std::string parameter, const std::string& constraint)
        : Error(parameter + ": " + constraint), parameter_(std::move(parameter)) {}

    const std::string& parameter() const noexcept { return parameter_; }

private:
    std::string parameter_;
};

/// p == n passed to a formula whose exponent (p-n)/(p-1) vanishes.
class ConformalExponentError : public Error {
public:
    ConformalExponentError()
        : Error("conformal-exponent unsupported: p == n has no closed form here; "
                "use the variational solver") {}
};

/// The inner integral of the criterion is zero or not finite.
class DegenerateMajorantError : public Error {
public:
    using Error::Error;
};

/// More than half of the sampled Q values were infinite.
class InfiniteMeanError : public Error {
public:
    using Error::Error;
};

/// A radius outside the domain of a map or table.
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace ringmod
