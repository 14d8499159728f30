#pragma once

#include <optional>
#include <vector>

#include "equistop/region.hpp"
#include "equistop/rng.hpp"

namespace equistop {

enum class ModelKind { Gbm, ReflectedBm };

/// One-dimensional diffusion: GBM dX = mu X dt + sigma X dW on (0,inf), or
/// reflected Brownian motion X = |W| on [0,inf).
struct DiffusionModel {
    ModelKind kind = ModelKind::Gbm;
    double mu = 0;
    double sigma = 1;

    static DiffusionModel gbm(double mu, double sigma);
    static DiffusionModel reflected_bm();

    /// GBM index nu = mu/sigma^2 - 1/2 (recomputed, never stored).
    /// Throws for the reflected model.
    double nu() const;

    double space_lo() const { return 0.0; }
    bool space_lo_is_member() const { return kind == ModelKind::ReflectedBm; }
    bool state_in_space(double x) const;
};

/// E^x[e^{-lambda T^x_a}] for the one-sided crossing to level a.
///
/// GBM up-crossing (x <= a):   (x/a)^{sqrt(nu^2+2 lambda/sigma^2) - nu}
/// GBM down-crossing (x >= a): (a/x)^{sqrt(nu^2+2 lambda/sigma^2) + nu}
/// Reflected BM up (x <= a):   cosh(x sqrt(2 lambda)) / cosh(a sqrt(2 lambda))
/// Reflected BM down (x >= a): exp(-(x-a) sqrt(2 lambda))
double laplace_hit_one_sided(const DiffusionModel& model, double x, double a,
                             double lambda);

/// Two-sided exit of the open interval (l, r) from y: returns
/// (E^y[e^{-lambda tau} 1{X_tau=l}], E^y[e^{-lambda tau} 1{X_tau=r}]).
/// GBM uses the drifted-Brownian exit transform in log scale; the reflected
/// model requires l > 0, where it behaves as plain Brownian motion.
std::pair<double, double> laplace_exit_two_sided(const DiffusionModel& model,
                                                 double y, double l, double r,
                                                 double lambda);

struct HitResult {
    double time = 0;
    double state = 0;
};

struct SimOptions {
    double base_step = 1e-3;  // step size near t = 0
    double step_growth = 0.01;  // dt grows like growth * t far out
    double max_step = 8.0;
    double horizon = 1e4;
};

/// First entry time of the path into `region`, simulated exactly on a step
/// grid (log-normal increments for GBM, |W| for the reflected model) with
/// per-step Brownian-bridge crossing corrections against the region's
/// interval endpoints.  x already inside the region hits at time 0.  Returns
/// nothing when no hit occurs before the horizon.
std::optional<HitResult> sample_first_hit(const DiffusionModel& model, double x,
                                          const RegionSet& region,
                                          const SimOptions& opts, CounterRng& rng);

/// Diagnostic path record used by property tests.
struct PathSample {
    std::vector<double> times;
    std::vector<double> states;
    std::optional<HitResult> hit;
    /// Per-step bridge-sampled running maximum of the natural-scale path.
    double bridge_max = 0;
};

PathSample simulate_path(const DiffusionModel& model, double x, double horizon,
                         double step, CounterRng& rng,
                         const RegionSet* query = nullptr);

}  // namespace equistop
