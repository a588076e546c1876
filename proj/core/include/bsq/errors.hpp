#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bsq {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument lies outside the domain of a potential or expression.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The potential has no minimum (e.g. Rosen-Morse with B >= A*Atilde).
class NoWellError : public Error {
public:
    using Error::Error;
};

/// Energy outside the window where two turning points exist.
class InvalidEnergyError : public Error {
public:
    using Error::Error;
};

/// Quantum number beyond the last bound level.
class UnboundError : public Error {
public:
    using Error::Error;
};

/// No closed form is available for the requested quantity.
class NotAvailableError : public Error {
public:
    using Error::Error;
};

/// Operation is undefined for this potential kind or parameter range.
class NotApplicableError : public Error {
public:
    using Error::Error;
};

/// k = 2 sits between the two asymptotic branches and is treated by neither.
class MarginalCaseError : public Error {
public:
    using Error::Error;
};

/// Series variant does not match the well (sextic variant needs alpha = 0).
class VariantMismatchError : public Error {
public:
    using Error::Error;
};

/// Quadrature failed to reach the requested accuracy.
class AccuracyError : public Error {
public:
    using Error::Error;
};

/// Eigensolver grid too coarse for the requested levels.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// Spectra to compare do not cover the same quantum numbers.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Fit matching system could not be solved.
class FitFailureError : public Error {
public:
    using Error::Error;
};

/// Malformed job configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Expression syntax error; carries the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace bsq
