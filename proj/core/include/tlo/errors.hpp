#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tlo {

// Base for every error the library raises on bad input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed instance / solution / QUBO document. `line` is 0 when the
// problem is structural rather than syntactic; `field` is a JSON path.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::string field)
        : Error(message), line_(line), field_(std::move(field)) {}

    std::size_t line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

// Well-formed data that breaks a domain invariant (duplicate ids, stack
// taller than the tier bound, ...).
class InvariantError : public Error {
public:
    using Error::Error;
};

// A solution refers to a container, wagon, slot or configuration that the
// instance does not have.
class DanglingReference : public Error {
public:
    using Error::Error;
};

// Raised by the rehandle counters when handed a plan that violates a hard
// constraint.
class InfeasibleSolution : public Error {
public:
    using Error::Error;
};

// Exhaustive enumeration refused because the raw search space is too big.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& message, double estimate)
        : Error(message), estimate_(estimate) {}

    double estimate() const { return estimate_; }

private:
    double estimate_;
};

class QuboError : public Error {
public:
    using Error::Error;
};

}  // namespace tlo
