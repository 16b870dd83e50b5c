#pragma once

#include <stdexcept>
#include <string>

namespace vbs {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Contract violation on an input value (negative eta, non-finite x, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Formula requested outside its range of validity (e.g. the LD expansion for a carrier).
class DomainError : public Error {
public:
    using Error::Error;
};

// Iteration budget exhausted or a numerical procedure failed.
class NumericError : public Error {
public:
    using Error::Error;
};

// Requested problem size cannot be allocated.
class ResourceError : public Error {
public:
    using Error::Error;
};

// Branch tracking could not decide a continuation inside [lo, hi].
class GridRefinementRequired : public NumericError {
public:
    GridRefinementRequired(const std::string& what, double lo, double hi)
        : NumericError(what), lo_(lo), hi_(hi) {}

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

}  // namespace vbs
