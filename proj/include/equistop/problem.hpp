#pragma once

#include "equistop/discount.hpp"
#include "equistop/grid.hpp"
#include "equistop/payoff.hpp"
#include "equistop/process.hpp"

namespace equistop {

/// Model + payoff + discount + domain truncation for grids.
///
/// Construction validates that the discount passes the log-subadditivity
/// check on the default pair grid.
struct StoppingProblem {
    DiffusionModel model;
    PayoffFunction payoff;
    DiscountFunction discount;
    double domain_lo = 0;
    double domain_hi = 0;

    StoppingProblem(DiffusionModel model, PayoffFunction payoff,
                    DiscountFunction discount);
    StoppingProblem(DiffusionModel model, PayoffFunction payoff,
                    DiscountFunction discount, double domain_lo, double domain_hi);

    /// Evaluation grid over the truncation window: log-spaced for GBM,
    /// uniform for the reflected model.
    Grid make_grid(int n) const;

    /// Max payoff over the truncation window; sets the indifference tolerance
    /// scale and the Monte Carlo horizon.
    double payoff_scale() const;
};

/// Model-appropriate default truncation window.
std::pair<double, double> default_domain(const DiffusionModel& model,
                                         const PayoffFunction& payoff);

}  // namespace equistop
