#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace darboux {

using Complex = std::complex<double>;

// Base of every error raised by the library. Callers that only care about
// "something went wrong" catch this; the subclasses carry the index that
// failed where one exists.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigurationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class InsufficientPrefixError : public Error {
public:
    using Error::Error;
};

class QuasiDefinitenessError : public Error {
public:
    using Error::Error;
};

// Raised when a computation hits an exact or numerically indistinguishable
// zero at recurrence index `index`.
class IndexedError : public Error {
public:
    IndexedError(const std::string& what, int index) : Error(what), index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

class ZeroHitError : public IndexedError {
public:
    using IndexedError::IndexedError;
};

class ExistenceError : public IndexedError {
public:
    using IndexedError::IndexedError;
};

class BreakdownError : public IndexedError {
public:
    using IndexedError::IndexedError;
};

class DegeneracyError : public IndexedError {
public:
    using IndexedError::IndexedError;
};

class NumericalError : public IndexedError {
public:
    using IndexedError::IndexedError;
};

class PrecisionError : public Error {
public:
    using Error::Error;
};

class BoundaryError : public Error {
public:
    using Error::Error;
};

class PoleError : public Error {
public:
    using Error::Error;
};

}  // namespace darboux
