#pragma once

#include <cstdint>
#include <string>

#include "equistop/problem.hpp"
#include "equistop/region.hpp"

namespace equistop {

/// J(x,R) = E^x[ delta(rho(x,R)) f(X_rho) ] by closed form.
///
/// Requires a hyperbolic discount and a built-in payoff; the hyperbolic
/// resolvent 1/(1+beta t) = ∫₀^∞ e^{-(1+beta t)s} ds reduces J to Laplace
/// transforms of hitting times under the exponential quadrature weight.
/// Divergent problems (GBM, nu > 0, unbounded payoff, gap open to +inf)
/// return +infinity; this marker is decided analytically, never numerically.
/// Throws NoClosedFormError for unsupported combinations.
double value_closed_form(const StoppingProblem& p, double x, const RegionSet& R);

struct McOptions {
    long paths = 100000;
    std::uint64_t seed = 42;
    double base_step = 1e-3;
    double step_growth = 0.01;
    double max_step = 8.0;
    double horizon = 0;  // 0 = derive from discount decay vs payoff scale
    int threads = 0;     // 0 = EQUISTOP_THREADS or 1
};

struct McResult {
    double estimate = 0;
    double stderr_ = 0;
    double truncation_bias = 0;  // delta(horizon) * payoff bound
    std::uint64_t seed = 0;
    long paths = 0;
    double horizon = 0;
};

/// Monte Carlo estimate of J(x,R): sample mean of delta(hit time) f(hit state)
/// over simulated paths, zero contribution from paths that never enter R.
/// Refuses analytically divergent problems with DivergenceError.
McResult value_monte_carlo(const StoppingProblem& p, double x, const RegionSet& R,
                           const McOptions& opts = {});

/// Horizon at which delta(h) * payoff bound drops below 1e-4, capped at 1e5.
double auto_horizon(const StoppingProblem& p);

/// V(x,R) = f(x) v J(x,R), closed-form engine.
double value_V_closed(const StoppingProblem& p, double x, const RegionSet& R);

struct IntegrabilityReport {
    bool e34_holds = false;  // delta(t) f(X_t) -> 0 a.s.
    bool e32_holds = false;  // E[sup_t delta(t) f(X_t)] < inf
    std::string basis;       // "analytic" or "empirical"
};

/// Long-run limit and uniform-integrability diagnostics for the problem.
IntegrabilityReport check_integrability(const StoppingProblem& p,
                                        std::uint64_t seed = 42);

}  // namespace equistop
