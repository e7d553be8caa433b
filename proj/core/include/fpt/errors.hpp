#pragma once

#include <stdexcept>
#include <string>

namespace fpt {

/// An argument violates the precondition of the operation it was passed to.
class PreconditionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not meet its accuracy contract
/// (series truncation cap reached, step refinement exhausted, ...).
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what)
{
    if (!ok)
        throw PreconditionError(what);
}

}  // namespace detail
}  // namespace fpt
