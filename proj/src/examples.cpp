#include "equistop/examples.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "equistop/quadrature.hpp"
#include "equistop/rootfind.hpp"

namespace equistop {

double g_exponent(double s, double nu, double beta, double sigma) {
    return std::sqrt(nu * nu + 2.0 * beta * s / (sigma * sigma)) - nu;
}

double kappa(double x, double a, double nu, double beta, double sigma) {
    if (!(x > 0) || !(x <= a))
        throw std::domain_error("kappa: requires 0 < x <= a");
    if (x == a) return a;
    return a * integrate_exp([&](double s) {
        return std::pow(x / a, g_exponent(s, nu, beta, sigma));
    });
}

double eta(double x, double a, double strike, double nu, double beta,
           double sigma) {
    if (!(a > 0) || !(a <= x))
        throw std::domain_error("eta: requires 0 < a <= x");
    if (!(a < strike)) throw std::domain_error("eta: requires a < K");
    if (x == a) return strike - a;
    return (strike - a) * integrate_exp([&](double s) {
        const double gamma = std::sqrt(nu * nu + 2.0 * beta * s / (sigma * sigma));
        return std::pow(a / x, gamma + nu);
    });
}

double bessel_threshold(double beta, double tol) {
    if (!(beta > 0)) throw std::invalid_argument("bessel_threshold: beta must be > 0");
    auto lhs = [&](double a) {
        return a * integrate_exp([&](double s) {
            const double q = std::sqrt(2.0 * beta * s);
            return q * std::tanh(a * q);
        }) - 1.0;
    };
    // The left side vanishes at a -> 0 and grows without bound, so this
    // scale-derived bracket always straddles the root.
    const double scale = 1.0 / std::sqrt(beta);
    return find_root(lhs, 1e-3 * scale, 1e3 * scale, {tol, 200});
}

double put_lambda(double mu, double sigma, double beta) {
    if (!(sigma > 0) || !(beta > 0))
        throw std::invalid_argument("put_lambda: sigma, beta must be > 0");
    const double nu = mu / (sigma * sigma) - 0.5;
    return integrate_exp([&](double s) {
        return std::sqrt(nu * nu + 2.0 * beta * s / (sigma * sigma)) + nu;
    });
}

double put_threshold(double mu, double sigma, double beta, double strike) {
    if (!(strike > 0)) throw std::invalid_argument("put_threshold: K must be > 0");
    const double lambda = put_lambda(mu, sigma, beta);
    return lambda / (1.0 + lambda) * strike;
}

const char* gbm_case_name(GbmCaseId id) {
    switch (id) {
        case GbmCaseId::NuPositive: return "NuPositive";
        case GbmCaseId::NuLeMinusHalf: return "NuLeMinusHalf";
        case GbmCaseId::Case1: return "Case1";
        case GbmCaseId::Case2i: return "Case2i";
        case GbmCaseId::Case2ii: return "Case2ii";
        case GbmCaseId::Case3i: return "Case3i";
        case GbmCaseId::Case3ii: return "Case3ii";
    }
    return "?";
}

double gbm_nu_star(double sigma, double beta, double tol) {
    const double boundary = std::sqrt(beta * M_PI / (2.0 * sigma * sigma));
    if (!(boundary < 1.0))
        throw std::domain_error(
            "gbm_nu_star: defined only when sqrt(beta pi / 2 sigma^2) < 1");
    auto f = [&](double nu) {
        return integrate_exp([&](double s) { return g_exponent(s, nu, beta, sigma); }) -
               1.0;
    };
    return find_root(f, -0.5 + 1e-9, -1e-9, {tol, 200});
}

GbmCase gbm_classify(double mu, double sigma, double beta) {
    if (!(sigma > 0) || !(beta > 0))
        throw std::invalid_argument("gbm_classify: sigma, beta must be > 0");
    constexpr double band = 1e-10;
    GbmCase result;
    result.nu = mu / (sigma * sigma) - 0.5;
    result.boundary = std::sqrt(beta * M_PI / (2.0 * sigma * sigma));

    const char* unique = "(0,inf) is the unique closed optimal equilibrium";
    const char* none = "no optimal equilibrium";

    if (result.nu > 0) {
        result.id = GbmCaseId::NuPositive;
        result.verdict = "the empty set is an optimal equilibrium";
        return result;
    }
    if (result.nu <= -0.5) {
        result.id = GbmCaseId::NuLeMinusHalf;
        result.verdict = unique;
        return result;
    }
    if (std::abs(result.boundary - 1.0) <= band) {
        result.boundary_band = true;
        if (std::abs(result.nu) <= band) {
            result.id = GbmCaseId::Case2i;
            result.verdict = none;
        } else {
            result.id = GbmCaseId::Case2ii;
            result.verdict = unique;
        }
        return result;
    }
    if (result.boundary > 1.0) {
        result.id = GbmCaseId::Case1;
        result.verdict = unique;
        return result;
    }
    const double nu_star = gbm_nu_star(sigma, beta);
    result.nu_star = nu_star;
    if (std::abs(result.nu - nu_star) <= band) result.boundary_band = true;
    if (result.nu >= nu_star - band) {
        result.id = GbmCaseId::Case3i;
        result.verdict = none;
    } else {
        result.id = GbmCaseId::Case3ii;
        result.verdict = unique;
    }
    return result;
}

StoppingProblem build_counterexample(double beta, double b_multiplier) {
    if (!(b_multiplier > 1.0))
        throw std::invalid_argument("build_counterexample: b_multiplier must be > 1");
    const double a_star = bessel_threshold(beta);
    const double b_star = b_multiplier * a_star;
    const double hi = std::max(10.0 * a_star, 2.5 * b_star);
    return StoppingProblem(DiffusionModel::reflected_bm(),
                           PayoffFunction::counterexample(beta, a_star, b_star),
                           DiscountFunction::hyperbolic(beta), 0.0, hi);
}

}  // namespace equistop
