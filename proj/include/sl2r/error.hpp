#pragma once

#include <stdexcept>
#include <string>

namespace sl2r {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class PoleError : public Error {
public:
    using Error::Error;
};

class NonNormalisable : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

// Carries the size of the numerical defect that triggered it.
class ResidualError : public Error {
public:
    ResidualError(const std::string& what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class AccuracyError : public ResidualError {
public:
    using ResidualError::ResidualError;
};

class TruncationError : public ResidualError {
public:
    using ResidualError::ResidualError;
};

class IncompleteError : public ResidualError {
public:
    using ResidualError::ResidualError;
};

}  // namespace sl2r
