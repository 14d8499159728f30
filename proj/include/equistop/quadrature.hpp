#pragma once

#include <functional>
#include <span>
#include <vector>

namespace equistop {

/// Gauss-Laguerre rule for integrals of the form ∫₀^∞ e^{-s} h(s) ds.
///
/// Nodes and weights are generated once per order via the Golub-Welsch
/// eigenvalue method and cached process-wide.
class QuadratureRule {
public:
    static const QuadratureRule& laguerre(int order);

    double apply(const std::function<double(double)>& h) const;

    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }
    int order() const { return static_cast<int>(nodes_.size()); }

private:
    explicit QuadratureRule(int order);
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

struct IntegrateOptions {
    int order = 64;          // default Gauss-Laguerre order
    int cross_order = 128;   // cross-check order
    double rtol = 1e-8;      // disagreement threshold triggering the split
    double split_point = 40.0;
};

/// ∫₀^∞ e^{-s} h(s) ds.
///
/// Evaluates the Gauss-Laguerre rule at `order` and `cross_order`; if the two
/// estimates disagree beyond `rtol` (relative to the larger magnitude), falls
/// back to a tanh-sinh rule on [0, split_point] plus a shifted Laguerre tail.
/// The fallback handles integrands with algebraic endpoint behaviour such as
/// √s, which plain Laguerre resolves slowly.
double integrate_exp(const std::function<double(double)>& h,
                     const IntegrateOptions& opts = {});

}  // namespace equistop
