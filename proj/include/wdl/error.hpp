#pragma once

#include <stdexcept>
#include <string>

namespace wdl {

/// Invalid arguments or parameters outside an operation's domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Query outside the range covered by a table or window.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Request would exceed a memory or time budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical procedure failed to converge.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wdl
