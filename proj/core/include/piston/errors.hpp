#pragma once

#include <stdexcept>
#include <string>

namespace piston {

/// Argument outside the mathematical domain of an operation (vacuum density,
/// non-positive sound speed, exponent outside (0,1], ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The scenario cannot be normalized (piston at rest).
class DegenerateScenario : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Advancing piston at or above the critical Mach number: no piecewise
/// constant integral solution exists, use the measure branch instead.
class NoIntegralSolution : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A construction was requested for a scenario of a different kind.
class WrongBranch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Fan formulas are singular because the characteristic field is linearly
/// degenerate (gamma == 1).
class DegenerateField : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finite-volume run lost positivity or produced non-finite values.
class PositivityLoss : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace piston
