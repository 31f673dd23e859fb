#pragma once

#include <stdexcept>
#include <string>

namespace sortpm {

// Base of every error thrown by the library. The CLI maps these to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input lies outside the domain of a formula (negative radicand where a real
// value is mandatory, vanishing denominator, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Both numerator and denominator of the half-angle form vanish: beta is undetermined.
class DegenerateHalfAngle : public Error {
public:
    using Error::Error;
};

// A real configuration was required but the solution carries imaginary parts.
class NotReal : public Error {
public:
    using Error::Error;
};

// The parallel Jacobian has a vanishing diagonal factor.
class SingularError : public Error {
public:
    using Error::Error;
};

// The dimensioning search found no admissible length below its cap.
class Infeasible : public Error {
public:
    using Error::Error;
};

// Malformed user input (files, notation strings). The CLI maps these to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace sortpm
