#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cvlc {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed input (scenario file, layout invariant, type invariant).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested design cannot satisfy its constraints.
///
/// `bound` names the constraint that failed (e.g. "handover", "illumination",
/// "band-disjointness") and `value`/`limit` carry the offending numbers.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(std::string bound, double value, double limit, const std::string& what)
        : std::runtime_error(what), bound_(std::move(bound)), value_(value), limit_(limit) {}

    const std::string& bound() const noexcept { return bound_; }
    double value() const noexcept { return value_; }
    double limit() const noexcept { return limit_; }

private:
    std::string bound_;
    double value_;
    double limit_;
};

/// AP placement that does not fit the hall or has impossible geometry.
class LayoutError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cvlc
