#pragma once

#include <stdexcept>
#include <string>

namespace homoglab {

// Base of every exception thrown by the library. kind() is the stable class
// name written into CLI reports.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

class InvalidArgument : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "InvalidArgument"; }
};

class ShapeError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
    const char* kind() const noexcept override { return "ShapeError"; }
};

class EllipticityViolation : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "EllipticityViolation"; }
};

class InfeasibleConstraint : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "InfeasibleConstraint"; }
};

class NonConvergence : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "NonConvergence"; }
};

class FormatError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "FormatError"; }
};

class IoError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "IoError"; }
};

class ConfigError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "ConfigError"; }
};

}  // namespace homoglab
