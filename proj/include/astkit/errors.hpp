// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace astkit {

/// Argument outside the mathematical domain of an operation (including
/// non-finite input, which is never propagated silently).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result not representable as a finite binary64 value.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Series or quadrature failed to reach its target within the work budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value together with an estimate of its relative error.  `lossy` is set
/// when the estimate exceeds the threshold documented by the producing
/// operation; the value is still the best available.
struct Estimate {
    double value = 0.0;
    double rel_err = 0.0;
    bool lossy = false;
};

namespace detail {

[[noreturn]] inline void domain_fail(const char* op, const std::string& what)
{
    throw DomainError(std::string(op) + ": " + what);
}

}  // namespace detail
}  // namespace astkit
