#include "equistop/discount.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace equistop {

DiscountFunction DiscountFunction::exponential(double alpha) {
    if (!(alpha > 0)) throw std::invalid_argument("exponential: alpha must be > 0");
    DiscountFunction d;
    d.kind_ = DiscountKind::Exponential;
    d.alpha_ = alpha;
    return d;
}

DiscountFunction DiscountFunction::hyperbolic(double beta) {
    if (!(beta > 0)) throw std::invalid_argument("hyperbolic: beta must be > 0");
    DiscountFunction d;
    d.kind_ = DiscountKind::Hyperbolic;
    d.beta_ = beta;
    return d;
}

DiscountFunction DiscountFunction::generalized_hyperbolic(double beta, double k) {
    if (!(beta > 0) || !(k > 0))
        throw std::invalid_argument("generalized-hyperbolic: beta, k must be > 0");
    DiscountFunction d;
    d.kind_ = DiscountKind::GeneralizedHyperbolic;
    d.beta_ = beta;
    d.k_ = k;
    return d;
}

DiscountFunction DiscountFunction::pseudo_exponential(double lambda, double r1,
                                                      double r2) {
    if (!(lambda > 0) || !(lambda < 1))
        throw std::invalid_argument("pseudo-exponential: lambda must be in (0,1)");
    if (!(r1 > 0) || !(r2 > 0))
        throw std::invalid_argument("pseudo-exponential: r1, r2 must be > 0");
    DiscountFunction d;
    d.kind_ = DiscountKind::PseudoExponential;
    d.lambda_ = lambda;
    d.r1_ = r1;
    d.r2_ = r2;
    return d;
}

double DiscountFunction::operator()(double t) const {
    if (!(t >= 0) || !std::isfinite(t))
        throw std::domain_error("discount: t must be finite and >= 0");
    switch (kind_) {
        case DiscountKind::Exponential:
            return std::exp(-alpha_ * t);
        case DiscountKind::Hyperbolic:
            return 1.0 / (1.0 + beta_ * t);
        case DiscountKind::GeneralizedHyperbolic:
            return std::pow(1.0 + beta_ * t, -k_);
        case DiscountKind::PseudoExponential:
            return lambda_ * std::exp(-r1_ * t) + (1.0 - lambda_) * std::exp(-r2_ * t);
    }
    return 0.0;
}

double DiscountFunction::log_at(double t) const {
    if (!(t >= 0) || !std::isfinite(t))
        throw std::domain_error("discount: t must be finite and >= 0");
    switch (kind_) {
        case DiscountKind::Exponential:
            return -alpha_ * t;
        case DiscountKind::Hyperbolic:
            return -std::log1p(beta_ * t);
        case DiscountKind::GeneralizedHyperbolic:
            return -k_ * std::log1p(beta_ * t);
        case DiscountKind::PseudoExponential: {
            // log-sum-exp around the slower rate.
            const double slow = std::min(r1_, r2_);
            const double w_slow = slow == r1_ ? lambda_ : 1.0 - lambda_;
            const double w_fast = 1.0 - w_slow;
            const double fast = std::max(r1_, r2_);
            return -slow * t +
                   std::log(w_slow + w_fast * std::exp(-(fast - slow) * t));
        }
    }
    return 0.0;
}

double DiscountFunction::time_to_reach(double level) const {
    if (!(level > 0) || !(level < 1))
        throw std::invalid_argument("time_to_reach: level must be in (0,1)");
    const DiscountFunction& d = *this;
    if (kind_ == DiscountKind::Hyperbolic) return (1.0 / level - 1.0) / beta_;
    if (kind_ == DiscountKind::Exponential) return -std::log(level) / alpha_;
    double hi = 1.0;
    while (d(hi) > level && hi < 1e18) hi *= 2.0;
    double lo = hi * 0.5;
    for (int i = 0; i < 200 && hi - lo > 1e-9 * (1.0 + hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (d(mid) > level ? lo : hi) = mid;
    }
    return hi;
}

std::string DiscountFunction::describe() const {
    std::ostringstream s;
    switch (kind_) {
        case DiscountKind::Exponential:
            s << "exponential(alpha=" << alpha_ << ")";
            break;
        case DiscountKind::Hyperbolic:
            s << "hyperbolic(beta=" << beta_ << ")";
            break;
        case DiscountKind::GeneralizedHyperbolic:
            s << "generalized-hyperbolic(beta=" << beta_ << ", k=" << k_ << ")";
            break;
        case DiscountKind::PseudoExponential:
            s << "pseudo-exponential(lambda=" << lambda_ << ", r1=" << r1_
              << ", r2=" << r2_ << ")";
            break;
    }
    return s.str();
}

SubadditivityReport check_log_subadditive(
    const DiscountFunction& d,
    std::span<const std::pair<double, double>> pairs, double tol) {
    if (pairs.empty())
        throw std::invalid_argument("check_log_subadditive: empty pair grid");
    SubadditivityReport report;
    report.holds = true;
    report.strict_everywhere = true;
    bool first = true;
    for (const auto& [s, t] : pairs) {
        if (!(s > 0) || !(t > 0))
            throw std::invalid_argument("check_log_subadditive: pairs require s,t > 0");
        const double margin = d(s + t) - d(s) * d(t);
        // Verdicts compare on the log scale, where products of heavily
        // discounted weights cannot underflow.
        const double log_margin = d.log_at(s + t) - d.log_at(s) - d.log_at(t);
        if (first || margin < report.worst_margin) {
            report.worst_margin = margin;
            report.worst_pair = {s, t};
            first = false;
        }
        if (log_margin < -tol) report.holds = false;
        if (log_margin <= tol) report.strict_everywhere = false;
    }
    return report;
}

const std::vector<std::pair<double, double>>& default_subadditivity_grid() {
    static const std::vector<std::pair<double, double>> grid = [] {
        std::vector<std::pair<double, double>> g;
        const int n = 40;
        const double lo = std::log(1e-3), hi = std::log(1e3);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double s = std::exp(lo + (hi - lo) * i / (n - 1));
                const double t = std::exp(lo + (hi - lo) * j / (n - 1));
                g.emplace_back(s, t);
            }
        return g;
    }();
    return grid;
}

}  // namespace equistop
