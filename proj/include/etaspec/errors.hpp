#pragma once

#include <stdexcept>
#include <string>

namespace etaspec {

/// Physics-domain failure: invalid quantum numbers, supercritical coupling,
/// unbound energies, failed oracle convergence. The CLI maps these to exit 1.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidStateError : public DomainError {
public:
    using DomainError::DomainError;
};

/// The square root in the coupling function is not real (or too close to zero).
class SubcriticalError : public DomainError {
public:
    SubcriticalError(const std::string& what, double alpha_bound)
        : DomainError(what), alpha_bound_(alpha_bound) {}
    double alpha_bound() const noexcept { return alpha_bound_; }

private:
    double alpha_bound_;
};

/// The series recurrence does not terminate for the given (state, energy) pair.
class TerminationError : public DomainError {
public:
    TerminationError(const std::string& what, double residual)
        : DomainError(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class BracketError : public DomainError {
public:
    using DomainError::DomainError;
};

class GridTooCoarseError : public DomainError {
public:
    using DomainError::DomainError;
};

class ConstantsError : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace etaspec
