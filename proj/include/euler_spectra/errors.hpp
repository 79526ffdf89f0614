#ifndef EULER_SPECTRA_ERRORS_HPP
#define EULER_SPECTRA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace euler_spectra {

/// Input lies outside the mathematical domain of an operation
/// (zero wave vector, lambda inside the essential band, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller passed inconsistent arguments (window mismatch, bad sizes).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed (non-finite state, no convergence).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// lambda maps into the essential band, where the continued fractions
/// are not defined.
class EssentialBandError : public DomainError {
public:
    using DomainError::DomainError;
};

class OnSpectralCurveError : public DomainError {
public:
    using DomainError::DomainError;
};

class SpectralPointSetError : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace euler_spectra

#endif
