#include "equistop/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace equistop {

std::pair<double, double> default_domain(const DiffusionModel& model,
                                         const PayoffFunction& payoff) {
    if (model.kind == ModelKind::ReflectedBm) {
        double hi = 10.0;
        if (payoff.kind() == PayoffKind::Counterexample)
            hi = 10.0 * payoff.a_star();
        return {0.0, hi};
    }
    // GBM: log window e^{∓6σ} around the reference state.
    const double ref = payoff.kind() == PayoffKind::Put ? payoff.strike() : 1.0;
    const double span = std::exp(6.0 * model.sigma);
    return {ref / span, ref * span};
}

StoppingProblem::StoppingProblem(DiffusionModel model_, PayoffFunction payoff_,
                                 DiscountFunction discount_)
    : StoppingProblem(model_, payoff_, discount_, 0, 0) {
    auto [lo, hi] = default_domain(model, payoff);
    domain_lo = lo;
    domain_hi = hi;
}

StoppingProblem::StoppingProblem(DiffusionModel model_, PayoffFunction payoff_,
                                 DiscountFunction discount_, double lo, double hi)
    : model(model_), payoff(std::move(payoff_)), discount(discount_),
      domain_lo(lo), domain_hi(hi) {
    const auto report =
        check_log_subadditive(discount, default_subadditivity_grid());
    if (!report.holds)
        throw std::invalid_argument(
            "stopping problem: discount fails log-subadditivity on the default grid");
}

Grid StoppingProblem::make_grid(int n) const {
    if (model.kind == ModelKind::Gbm)
        return Grid::logarithmic(domain_lo, domain_hi, n);
    return Grid::linear(domain_lo, domain_hi, n);
}

double StoppingProblem::payoff_scale() const {
    const double b = payoff.bound_on(domain_lo, domain_hi);
    return b > 0 ? b : 1.0;
}

}  // namespace equistop
