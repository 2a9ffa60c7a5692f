#pragma once

#include <stdexcept>
#include <string>

namespace specreg {

/// Caller supplied data or configuration that violates a precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical step failed (non-PD matrix, underflow, divergence).
/// `dump` carries a human-readable snapshot of the offending state.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what, std::string dump = {})
        : std::runtime_error(what), dump_(std::move(dump)) {}

    const std::string& dump() const noexcept { return dump_; }

private:
    std::string dump_;
};

/// Spectral value fell below the inversion floor.
class SingularCovariance : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace specreg
