#pragma once

#include <optional>
#include <string>

#include "equistop/problem.hpp"

namespace equistop {

/// Crossing exponent g(s, nu) = sqrt(nu^2 + 2 beta s / sigma^2) - nu of the
/// GBM up-crossing transform; positive for s > 0 and strictly decreasing in nu.
double g_exponent(double s, double nu, double beta, double sigma);

/// kappa(x, a) = E^x[a / (1 + beta T^x_a)] for GBM, 0 < x <= a.
double kappa(double x, double a, double nu, double beta, double sigma);

/// eta(x, a) = E^x[(K - a) / (1 + beta T^x_a)] for GBM, 0 < a <= x, a < K.
double eta(double x, double a, double strike, double nu, double beta,
           double sigma);

/// The largest equilibrium threshold a* for stopping a reflected Brownian
/// motion under hyperbolic discounting: the unique positive root of
///   a ∫₀^∞ e^{-s} sqrt(2 beta s) tanh(a sqrt(2 beta s)) ds = 1.
/// Scale law: a*(beta) sqrt(beta) is constant.
double bessel_threshold(double beta, double tol = 1e-10);

/// lambda = ∫₀^∞ e^{-s} (sqrt(nu^2 + 2 beta s / sigma^2) + nu) ds > 0.
double put_lambda(double mu, double sigma, double beta);

/// Optimal perpetual-put stopping threshold (lambda / (1 + lambda)) K.
double put_threshold(double mu, double sigma, double beta, double strike);

enum class GbmCaseId {
    NuPositive,
    NuLeMinusHalf,
    Case1,
    Case2i,
    Case2ii,
    Case3i,
    Case3ii,
};

const char* gbm_case_name(GbmCaseId id);

struct GbmCase {
    GbmCaseId id = GbmCaseId::Case1;
    double nu = 0;
    double boundary = 0;  // sqrt(beta pi / (2 sigma^2))
    std::optional<double> nu_star;
    std::string verdict;
    bool boundary_band = false;  // parameters within 1e-10 of a case boundary
};

/// Classification of the GBM liquidation problem (identity payoff, hyperbolic
/// discounting) into its optimal-equilibrium regimes.
GbmCase gbm_classify(double mu, double sigma, double beta);

/// The critical index nu* in (-1/2, 0) solving
///   ∫₀^∞ e^{-s} (sqrt(nu*^2 + 2 beta s / sigma^2) - nu*) ds = 1,
/// defined when sqrt(beta pi / (2 sigma^2)) < 1.
double gbm_nu_star(double sigma, double beta, double tol = 1e-10);

/// Reflected-BM stopping problem with the two-branch payoff that makes both
/// [a*, b*] and [a*, inf) closed optimal equilibria (b* = b_multiplier a*).
StoppingProblem build_counterexample(double beta, double b_multiplier);

}  // namespace equistop
