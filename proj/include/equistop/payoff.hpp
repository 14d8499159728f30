#pragma once

#include <string>
#include <vector>

namespace equistop {

enum class PayoffKind { Identity, Put, Counterexample, Tabulated };

/// Continuous nonnegative payoff f on the state space.
///
/// The counterexample payoff is x on [0, b*] and the hyperbolically
/// discounted value of waiting to fall back to b* above it, which makes every
/// state above b* exactly indifferent under the policy [a*, b*].
class PayoffFunction {
public:
    static PayoffFunction identity();
    static PayoffFunction put(double strike);
    static PayoffFunction counterexample(double beta, double a_star, double b_star);
    static PayoffFunction tabulated(std::vector<double> x, std::vector<double> f);

    double operator()(double x) const;

    PayoffKind kind() const { return kind_; }
    double strike() const { return strike_; }
    double b_star() const { return b_star_; }
    double a_star() const { return a_star_; }

    /// True when f is bounded on the whole state space.
    bool bounded() const { return kind_ != PayoffKind::Identity; }
    /// Supremum of f over [lo, hi] (or the global bound when smaller).
    double bound_on(double lo, double hi) const;

    std::string describe() const;

private:
    PayoffFunction() = default;
    PayoffKind kind_ = PayoffKind::Identity;
    double strike_ = 0;
    double beta_ = 0, a_star_ = 0, b_star_ = 0;
    std::vector<double> xs_, fs_;
};

}  // namespace equistop
