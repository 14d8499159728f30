#include "equistop/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "equistop/quadrature.hpp"

namespace equistop {

PayoffFunction PayoffFunction::identity() {
    PayoffFunction f;
    f.kind_ = PayoffKind::Identity;
    return f;
}

PayoffFunction PayoffFunction::put(double strike) {
    if (!(strike > 0)) throw std::invalid_argument("put: strike must be > 0");
    PayoffFunction f;
    f.kind_ = PayoffKind::Put;
    f.strike_ = strike;
    return f;
}

PayoffFunction PayoffFunction::counterexample(double beta, double a_star,
                                              double b_star) {
    if (!(beta > 0)) throw std::invalid_argument("counterexample: beta must be > 0");
    if (!(b_star > a_star) || !(a_star > 0))
        throw std::invalid_argument("counterexample: need 0 < a* < b*");
    PayoffFunction f;
    f.kind_ = PayoffKind::Counterexample;
    f.beta_ = beta;
    f.a_star_ = a_star;
    f.b_star_ = b_star;
    return f;
}

PayoffFunction PayoffFunction::tabulated(std::vector<double> x,
                                         std::vector<double> f) {
    if (x.size() != f.size() || x.size() < 2)
        throw std::invalid_argument("tabulated payoff: need >= 2 matching knots");
    if (!std::is_sorted(x.begin(), x.end()))
        throw std::invalid_argument("tabulated payoff: knots must be sorted");
    for (double v : f)
        if (!(v >= 0)) throw std::invalid_argument("tabulated payoff: f must be >= 0");
    PayoffFunction p;
    p.kind_ = PayoffKind::Tabulated;
    p.xs_ = std::move(x);
    p.fs_ = std::move(f);
    return p;
}

double PayoffFunction::operator()(double x) const {
    switch (kind_) {
        case PayoffKind::Identity:
            return x;
        case PayoffKind::Put:
            return std::max(strike_ - x, 0.0);
        case PayoffKind::Counterexample: {
            if (x <= b_star_) return x;
            // E^x[b* / (1 + beta T^x_{b*})] for |W| falling from x to b*:
            // the down-crossing transform is exp(-(x-b*) sqrt(2 beta s)).
            const double gap = x - b_star_;
            return b_star_ *
                   integrate_exp([&](double s) {
                       return std::exp(-gap * std::sqrt(2.0 * beta_ * s));
                   });
        }
        case PayoffKind::Tabulated: {
            if (x <= xs_.front()) return fs_.front();
            if (x >= xs_.back()) return fs_.back();
            auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
            const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
            const double w = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
            return fs_[i - 1] + w * (fs_[i] - fs_[i - 1]);
        }
    }
    return 0.0;
}

double PayoffFunction::bound_on(double lo, double hi) const {
    switch (kind_) {
        case PayoffKind::Identity:
            return hi;
        case PayoffKind::Put:
            return std::max(strike_ - lo, 0.0);
        case PayoffKind::Counterexample:
            return std::min(hi, b_star_);  // f peaks at b* and decays above
        case PayoffKind::Tabulated: {
            double best = 0;
            for (std::size_t i = 0; i < xs_.size(); ++i)
                if (xs_[i] >= lo && xs_[i] <= hi) best = std::max(best, fs_[i]);
            best = std::max({best, (*this)(lo), (*this)(hi)});
            return best;
        }
    }
    return 0.0;
}

std::string PayoffFunction::describe() const {
    std::ostringstream s;
    switch (kind_) {
        case PayoffKind::Identity: s << "identity"; break;
        case PayoffKind::Put: s << "put(K=" << strike_ << ")"; break;
        case PayoffKind::Counterexample:
            s << "counterexample(beta=" << beta_ << ", a*=" << a_star_
              << ", b*=" << b_star_ << ")";
            break;
        case PayoffKind::Tabulated: s << "tabulated(" << xs_.size() << " knots)"; break;
    }
    return s.str();
}

}  // namespace equistop
