#pragma once

#include <stdexcept>
#include <string>

namespace padic {

// A result's valuation (or a pivot, or a hull vertex) cannot be certified
// from the input balls.
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& msg) : std::runtime_error(msg) {}
};

// x is outside E_alpha(A): the defining sup diverges.
struct DivergentNorm : std::runtime_error {
    explicit DivergentNorm(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation point violates the certified convergence radius.
struct DivergentPoint : std::runtime_error {
    explicit DivergentPoint(const std::string& msg) : std::runtime_error(msg) {}
};

// (+inf) + (-inf) and friends.
struct IndeterminateForm : std::runtime_error {
    explicit IndeterminateForm(const std::string& msg) : std::runtime_error(msg) {}
};

// Shape mismatch or an unmet structural precondition of a problem.
struct InvalidProblem : std::runtime_error {
    explicit InvalidProblem(const std::string& msg) : std::runtime_error(msg) {}
};

// A truncated multivariate series does not carry enough exact degrees.
struct InsufficientDegree : std::runtime_error {
    explicit InsufficientDegree(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace padic
