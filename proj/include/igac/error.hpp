#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace igac {

enum class ErrorKind {
    domain,             // parameter outside its declared domain
    shape,              // dimension mismatch
    unsupported,        // no registered closed form / unknown family
    accuracy,           // quadrature or finite-difference check failed to converge
    singularity,        // integrator step underflow near a singular region
    inversion,          // singular metric
    insufficient_data,  // too few samples for a fit or statistic
    inapplicable,       // operation does not apply to the given input
    fit,                // ill-conditioned or non-monotone fit
    validation,         // malformed input (non-Hermitian matrix, bad settings)
    resource,           // request exceeds configured limits
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, std::string field = {})
        : std::runtime_error(std::move(message)), kind_(kind), field_(std::move(field)) {}

    ErrorKind kind() const noexcept { return kind_; }
    // Name of the offending parameter or field, when one applies.
    const std::string& field() const noexcept { return field_; }

private:
    ErrorKind kind_;
    std::string field_;
};

// Quadrature refinement did not settle; carries the last two estimates.
class AccuracyError : public Error {
public:
    AccuracyError(std::string message, double previous, double current)
        : Error(ErrorKind::accuracy, std::move(message)), previous_(previous), current_(current) {}

    double previous_estimate() const noexcept { return previous_; }
    double current_estimate() const noexcept { return current_; }

private:
    double previous_;
    double current_;
};

// Integrator gave up; carries the last accepted state (coordinates then velocities).
class SingularityError : public Error {
public:
    SingularityError(std::string message, double tau, std::vector<double> state)
        : Error(ErrorKind::singularity, std::move(message)), tau_(tau), state_(std::move(state)) {}

    double tau() const noexcept { return tau_; }
    const std::vector<double>& last_state() const noexcept { return state_; }

private:
    double tau_;
    std::vector<double> state_;
};

}  // namespace igac
