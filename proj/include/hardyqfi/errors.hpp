#pragma once

#include <stdexcept>
#include <string>

namespace hardyqfi {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside its mathematical domain (x outside [0,1], bad grid, bad step).
class DomainError : public Error {
public:
    using Error::Error;
};

// Structural precondition violated (unnormalized input, non-involutory generator,
// non-Hermitian observable, non-idempotent projector).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class DegeneratePostSelection : public Error {
public:
    using Error::Error;
};

// A ratio whose denominator vanishes (zero observable variance, P in {0,1}).
class UndefinedQuantity : public Error {
public:
    using Error::Error;
};

class BracketingError : public Error {
public:
    using Error::Error;
};

class NonFiniteMetric : public Error {
public:
    using Error::Error;
};

class SimulationError : public Error {
public:
    enum class Kind { InvalidConfig, UnsuitableMeasurement, EstimationFailure };

    SimulationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace hardyqfi
