#pragma once

#include <stdexcept>
#include <string>

namespace equistop {

/// Root-finding bracket does not straddle a sign change.
struct BracketError : std::runtime_error {
    explicit BracketError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An iterative scheme exhausted its iteration budget.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An integrand produced a non-finite value; carries the offending node.
struct EvaluationError : std::runtime_error {
    double node;
    EvaluationError(const std::string& msg, double node_)
        : std::runtime_error(msg), node(node_) {}
};

/// The requested problem has no closed-form valuation; use Monte Carlo.
struct NoClosedFormError : std::runtime_error {
    explicit NoClosedFormError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The expected payoff is +infinity; a numeric engine refuses to estimate it.
struct DivergenceError : std::runtime_error {
    explicit DivergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace equistop
