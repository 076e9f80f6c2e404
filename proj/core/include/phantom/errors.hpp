#pragma once

#include <stdexcept>
#include <string>

namespace phantom {

/// Precondition violated by the caller.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A series or iteration exhausted its budget. Carries the last partial value.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate) {}
    double best_estimate() const noexcept { return best_estimate_; }

private:
    double best_estimate_;
};

/// Numerical breakdown: singular systems, stalled inverse iteration.
/// `estimate` holds a condition estimate or the best value reached.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double estimate)
        : std::runtime_error(what), estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

/// No admissible window or data for an estimator.
class EstimationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace phantom
