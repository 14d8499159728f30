#pragma once

#include <functional>

namespace equistop {

struct RootOptions {
    double tol = 1e-10;
    int max_iter = 200;
};

/// Bracketed scalar root of g on [lo, hi] via Brent's method.
///
/// Returns x with |g(x)| <= tol or bracket width <= tol.  Throws BracketError
/// when g(lo) and g(hi) share a sign, ConvergenceError (carrying the last
/// bracket in the message) when the iteration budget is exhausted.
double find_root(const std::function<double(double)>& g, double lo, double hi,
                 const RootOptions& opts = {});

}  // namespace equistop
