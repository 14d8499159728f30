#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace equistop {

enum class DiscountKind {
    Exponential,            // e^{-alpha t}
    Hyperbolic,             // 1 / (1 + beta t)
    GeneralizedHyperbolic,  // 1 / (1 + beta t)^k
    PseudoExponential,      // lambda e^{-r1 t} + (1-lambda) e^{-r2 t}
};

/// Parametric discount function delta : [0, inf) -> (0, 1].
///
/// All built-in families are non-increasing, continuous, satisfy delta(0)=1,
/// delta(t)->0, and are log-subadditive: delta(s) delta(t) <= delta(s+t) for
/// s,t > 0.  The exponential family is the equality case.
class DiscountFunction {
public:
    static DiscountFunction exponential(double alpha);
    static DiscountFunction hyperbolic(double beta);
    static DiscountFunction generalized_hyperbolic(double beta, double k);
    static DiscountFunction pseudo_exponential(double lambda, double r1, double r2);

    /// delta(t); throws std::domain_error for negative or non-finite t.
    double operator()(double t) const;

    /// ln delta(t), computed analytically; immune to underflow of delta
    /// itself at extreme horizons.
    double log_at(double t) const;

    DiscountKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double k() const { return k_; }
    double lambda() const { return lambda_; }
    double r1() const { return r1_; }
    double r2() const { return r2_; }

    /// Built-in families are known log-subadditive analytically; the grid
    /// check is a numerical cross-check, not the authority.
    bool known_log_subadditive() const { return true; }

    /// Smallest t with delta(t) <= level, by expanding search + bisection.
    double time_to_reach(double level) const;

    std::string describe() const;

private:
    DiscountFunction() = default;
    DiscountKind kind_ = DiscountKind::Hyperbolic;
    double alpha_ = 0, beta_ = 0, k_ = 0, lambda_ = 0, r1_ = 0, r2_ = 0;
};

struct SubadditivityReport {
    bool holds = false;
    bool strict_everywhere = false;
    std::pair<double, double> worst_pair{0, 0};
    double worst_margin = 0;  // min over pairs of delta(s+t) - delta(s)delta(t)
};

/// Checks delta(s)delta(t) <= delta(s+t) over the supplied pairs (all s,t>0).
/// `holds` allows slack tol; `strict_everywhere` requires margin > tol at
/// every pair.  Throws std::invalid_argument on an empty grid.
SubadditivityReport check_log_subadditive(
    const DiscountFunction& d,
    std::span<const std::pair<double, double>> pairs, double tol = 1e-12);

/// Default check grid: 40x40 log-spaced pairs in [1e-3, 1e3].
const std::vector<std::pair<double, double>>& default_subadditivity_grid();

}  // namespace equistop
