#include "equistop/process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace equistop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sinh(q a) / sinh(q b) for 0 <= a <= b, in overflow-safe exponential form.
double sinh_ratio(double q, double a, double b) {
    if (a <= 0) return 0.0;
    if (a >= b) return 1.0;
    return std::exp(q * (a - b)) * (1.0 - std::exp(-2.0 * q * a)) /
           (1.0 - std::exp(-2.0 * q * b));
}

// cosh(q x) / cosh(q a) for 0 <= x <= a.
double cosh_ratio(double q, double x, double a) {
    return std::exp(q * (x - a)) * (1.0 + std::exp(-2.0 * q * x)) /
           (1.0 + std::exp(-2.0 * q * a));
}

// The simulation works in the model's natural scale, where the driving noise
// is a Brownian motion with constant drift and volatility: log scale for GBM,
// the underlying (signed) W for the reflected model.
struct NaturalFrame {
    double drift = 0;
    double vol = 1;
    double start = 0;                    // natural-scale start
    RegionSet region;                    // region mapped to natural scale
    bool reflected = false;

    double to_state(double z) const {
        return reflected ? std::abs(z) : std::exp(z);
    }
};

NaturalFrame make_frame(const DiffusionModel& model, double x,
                        const RegionSet& region) {
    NaturalFrame f;
    if (model.kind == ModelKind::Gbm) {
        f.drift = model.mu - 0.5 * model.sigma * model.sigma;
        f.vol = model.sigma;
        f.start = std::log(x);
        std::vector<Interval> mapped;
        for (const auto& iv : region.intervals()) {
            const double lo = iv.lo <= 0 ? -kInf : std::log(iv.lo);
            const double hi = iv.hi == kInf ? kInf : std::log(iv.hi);
            mapped.push_back({lo, hi});
        }
        f.region = RegionSet::from_intervals(std::move(mapped));
    } else {
        f.reflected = true;
        f.drift = 0;
        f.vol = 1;
        f.start = x;
        // |W| in [lo,hi]  <=>  W in [-hi,-lo] or [lo,hi].
        std::vector<Interval> mapped;
        for (const auto& iv : region.intervals()) {
            const double hi = iv.hi == kInf ? kInf : iv.hi;
            mapped.push_back({iv.lo, hi});
            mapped.push_back({hi == kInf ? -kInf : -hi, -iv.lo});
        }
        f.region = RegionSet::from_intervals(std::move(mapped));
    }
    return f;
}

// Probability that a Brownian bridge between (z0, z1) over dt crosses level c
// when both endpoints sit on the same side of c.
double bridge_cross_prob(double z0, double z1, double c, double var_dt) {
    const double d0 = c - z0;
    const double d1 = c - z1;
    if (d0 * d1 <= 0) return 1.0;
    const double p = std::exp(-2.0 * d0 * d1 / var_dt);
    return std::min(p, 1.0);
}

struct StepHit {
    double time_fraction;
    double natural_level;
};

// First region boundary crossed while travelling from z0 to z1 (both-end
// evidence: z1 landed in the region or in a different gap).
StepHit first_crossing(const RegionSet& region, double z0, double z1) {
    double best_theta = 2.0;
    double best_level = z1;
    for (const auto& iv : region.intervals()) {
        for (double c : {iv.lo, iv.hi}) {
            if (!std::isfinite(c)) continue;
            if ((c - z0) * (c - z1) <= 0 && c != z0) {
                const double theta = (c - z0) / (z1 - z0);
                if (theta < best_theta) {
                    best_theta = theta;
                    best_level = c;
                }
            }
        }
    }
    if (best_theta > 1.0) {  // z1 inside an interval without crossing evidence
        best_theta = 1.0;
        best_level = z1;
    }
    return {best_theta, best_level};
}

}  // namespace

DiffusionModel DiffusionModel::gbm(double mu, double sigma) {
    if (!(sigma > 0)) throw std::invalid_argument("gbm: sigma must be > 0");
    DiffusionModel m;
    m.kind = ModelKind::Gbm;
    m.mu = mu;
    m.sigma = sigma;
    return m;
}

DiffusionModel DiffusionModel::reflected_bm() {
    DiffusionModel m;
    m.kind = ModelKind::ReflectedBm;
    return m;
}

double DiffusionModel::nu() const {
    if (kind != ModelKind::Gbm)
        throw std::invalid_argument("nu: only defined for the GBM model");
    return mu / (sigma * sigma) - 0.5;
}

bool DiffusionModel::state_in_space(double x) const {
    if (kind == ModelKind::Gbm) return x > 0 && std::isfinite(x);
    return x >= 0 && std::isfinite(x);
}

double laplace_hit_one_sided(const DiffusionModel& model, double x, double a,
                             double lambda) {
    if (!(lambda > 0))
        throw std::invalid_argument("laplace_hit_one_sided: lambda must be > 0");
    if (!model.state_in_space(x) || !model.state_in_space(a))
        throw std::domain_error("laplace_hit_one_sided: state outside the state space");
    if (x == a) return 1.0;

    if (model.kind == ModelKind::Gbm) {
        const double nu = model.nu();
        const double gamma =
            std::sqrt(nu * nu + 2.0 * lambda / (model.sigma * model.sigma));
        if (x < a) return std::pow(x / a, gamma - nu);
        return std::pow(a / x, gamma + nu);
    }
    const double q = std::sqrt(2.0 * lambda);
    if (x < a) return cosh_ratio(q, x, a);
    return std::exp(-(x - a) * q);
}

std::pair<double, double> laplace_exit_two_sided(const DiffusionModel& model,
                                                 double y, double l, double r,
                                                 double lambda) {
    if (!(lambda > 0))
        throw std::invalid_argument("laplace_exit_two_sided: lambda must be > 0");
    if (!(l < y && y < r))
        throw std::domain_error("laplace_exit_two_sided: need l < y < r");
    if (model.kind == ModelKind::Gbm) {
        if (!(l > 0))
            throw std::domain_error("laplace_exit_two_sided: GBM needs l > 0");
        const double nu = model.nu();
        const double gamma =
            std::sqrt(nu * nu + 2.0 * lambda / (model.sigma * model.sigma));
        const double A = std::log(r / y);
        const double B = std::log(r / l);
        const double C = std::log(y / l);
        const double low = std::pow(l / y, nu) * sinh_ratio(gamma, A, B);
        const double high = std::pow(r / y, nu) * sinh_ratio(gamma, C, B);
        return {low, high};
    }
    // Between l >= 0 and r the reflected path never feels the reflection and
    // behaves as plain Brownian motion (reaching l = 0 is W hitting 0).
    if (!(l >= 0))
        throw std::domain_error("laplace_exit_two_sided: reflected model needs l >= 0");
    const double q = std::sqrt(2.0 * lambda);
    return {sinh_ratio(q, r - y, r - l), sinh_ratio(q, y - l, r - l)};
}

std::optional<HitResult> sample_first_hit(const DiffusionModel& model, double x,
                                          const RegionSet& region,
                                          const SimOptions& opts, CounterRng& rng) {
    if (!(opts.horizon > 0) || !(opts.base_step > 0))
        throw std::invalid_argument("sample_first_hit: horizon and step must be > 0");
    if (!model.state_in_space(x))
        throw std::domain_error("sample_first_hit: start state outside the state space");
    if (region.is_empty()) {
        // Nothing to hit; still consistent with the t >= 0 convention.
        return std::nullopt;
    }
    if (region.contains(x)) return HitResult{0.0, x};

    NaturalFrame frame = make_frame(model, x, region);
    const double var1 = frame.vol * frame.vol;

    double t = 0.0;
    double z = frame.start;
    while (t < opts.horizon) {
        auto [gl, gr] = frame.region.neighbors(z, -kInf, kInf);
        double dt = std::max(opts.base_step, opts.step_growth * t);
        dt = std::min({dt, opts.max_step, opts.horizon - t});
        if (std::isfinite(gl) && std::isfinite(gr)) {
            // Keep steps short relative to the gap so that double crossings
            // within one step stay negligible.
            const double width = gr - gl;
            dt = std::min(dt, std::max(opts.base_step, width * width / (8.0 * var1)));
        }

        const double z1 = z + frame.drift * dt + frame.vol * std::sqrt(dt) * rng.normal();

        const bool crossed =
            frame.region.contains(z1) ||
            frame.region.neighbors(z1, -kInf, kInf) !=
                std::pair<double, double>{gl, gr};
        if (crossed) {
            const StepHit hit = first_crossing(frame.region, z, z1);
            return HitResult{t + hit.time_fraction * dt,
                             frame.to_state(hit.natural_level)};
        }

        // Same gap at both ends: Brownian-bridge correction per barrier.
        double pl = 0.0, pr = 0.0;
        if (std::isfinite(gl)) pl = bridge_cross_prob(z, z1, gl, var1 * dt);
        if (std::isfinite(gr)) pr = bridge_cross_prob(z, z1, gr, var1 * dt);
        const double p = 1.0 - (1.0 - pl) * (1.0 - pr);
        if (p > 0.0 && rng.uniform() < p) {
            const double pick = rng.uniform() * (pl + pr);
            const double level = pick < pl ? gl : gr;
            return HitResult{t + 0.5 * dt, frame.to_state(level)};
        }

        t += dt;
        z = z1;
    }
    return std::nullopt;
}

PathSample simulate_path(const DiffusionModel& model, double x, double horizon,
                         double step, CounterRng& rng, const RegionSet* query) {
    if (!(horizon > 0) || !(step > 0))
        throw std::invalid_argument("simulate_path: horizon and step must be > 0");
    PathSample sample;
    NaturalFrame frame = make_frame(model, x, query ? *query : RegionSet::empty());
    double t = 0.0;
    double z = frame.start;
    sample.times.push_back(0.0);
    sample.states.push_back(x);
    sample.bridge_max = z;
    if (query && query->contains(x)) sample.hit = HitResult{0.0, x};

    while (t < horizon) {
        const double dt = std::min(step, horizon - t);
        const double z1 = z + frame.drift * dt + frame.vol * std::sqrt(dt) * rng.normal();
        // Bridge-sampled maximum of the natural-scale path over this step.
        const double u = rng.uniform();
        const double d = z1 - z;
        const double m =
            0.5 * (z + z1 +
                   std::sqrt(d * d - 2.0 * frame.vol * frame.vol * dt * std::log(u)));
        sample.bridge_max = std::max(sample.bridge_max, m);

        t += dt;
        sample.times.push_back(t);
        sample.states.push_back(frame.to_state(z1));
        if (query && !sample.hit) {
            if (frame.region.contains(z1)) {
                const StepHit hit = first_crossing(frame.region, z, z1);
                sample.hit = HitResult{t - dt + hit.time_fraction * dt,
                                       frame.to_state(hit.natural_level)};
            }
        }
        z = z1;
    }
    return sample;
}

}  // namespace equistop
