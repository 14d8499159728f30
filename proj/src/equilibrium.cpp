#include "equistop/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "equistop/errors.hpp"
#include "equistop/examples.hpp"

namespace equistop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double default_eps(const StoppingProblem& p, const ClassifyOptions& opts) {
    if (opts.eps_indifference > 0) return opts.eps_indifference;
    return 1e-6 * p.payoff_scale();
}

bool closed_form_available(const StoppingProblem& p) {
    return p.discount.kind() == DiscountKind::Hyperbolic &&
           p.payoff.kind() != PayoffKind::Tabulated;
}

// Mask inclusion a ⊆ b.
bool mask_subset(const std::vector<bool>& a, const std::vector<bool>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}

std::string gbm_no_optimal_note(const StoppingProblem& p) {
    if (p.model.kind != ModelKind::Gbm ||
        p.payoff.kind() != PayoffKind::Identity ||
        p.discount.kind() != DiscountKind::Hyperbolic)
        return {};
    const GbmCase c = gbm_classify(p.model.mu, p.model.sigma, p.discount.beta());
    if (c.id == GbmCaseId::Case2i || c.id == GbmCaseId::Case3i)
        return "no optimal equilibrium exists for this problem (" + c.verdict + ")";
    return {};
}

}  // namespace

Classification classify(const StoppingProblem& p, const RegionSet& R,
                        const Grid& g, const ClassifyOptions& opts) {
    Classification out;
    out.eps_indifference = default_eps(p, opts);
    out.points.resize(g.size());

    Engine engine = opts.engine;
    if (engine == Engine::Auto)
        engine = closed_form_available(p) ? Engine::ClosedForm : Engine::MonteCarlo;
    if (engine == Engine::ClosedForm && !closed_form_available(p))
        throw NoClosedFormError(
            "closed-form engine requested but unavailable for this problem");

    for (int i = 0; i < g.size(); ++i) {
        PointClassification& pc = out.points[i];
        pc.x = g.points[i];
        pc.payoff = p.payoff(pc.x);
        pc.censored = g.censored(i);
        if (R.contains(pc.x)) {
            pc.value = pc.payoff;
            pc.residual = 0;
            pc.label = Label::Indifferent;
            pc.engine = 'e';
            continue;
        }
        if (engine == Engine::ClosedForm) {
            pc.value = value_closed_form(p, pc.x, R);
            pc.engine = 'c';
        } else {
            const McResult mc = value_monte_carlo(p, pc.x, R, opts.mc);
            pc.value = mc.estimate;
            pc.stderr_ = mc.stderr_;
            pc.engine = 'm';
        }
        // The indifference band scales with the local value: a single global
        // band would either mask stop-violations at small states on wide log
        // grids or be needlessly loose elsewhere.
        double eps = opts.eps_indifference > 0
            ? opts.eps_indifference
            : 1e-6 * std::max(std::abs(pc.payoff),
                              std::isfinite(pc.value) ? std::abs(pc.value) : 0.0);
        if (pc.engine == 'm') eps = std::max(eps, 3.0 * pc.stderr_);
        if (pc.value == kInf) {
            pc.residual = -kInf;
            pc.label = Label::Continue;
            continue;
        }
        pc.residual = pc.payoff - pc.value;
        if (std::abs(pc.residual) <= eps) pc.label = Label::Indifferent;
        else if (pc.residual > eps) pc.label = Label::Stop;
        else pc.label = Label::Continue;
    }
    return out;
}

RegionSet theta(const StoppingProblem& p, const RegionSet& R, const Grid& g,
                const ClassifyOptions& opts) {
    const Classification cls = classify(p, R, g, opts);
    std::vector<bool> mask = R.to_mask(g);
    for (int i = 0; i < g.size(); ++i)
        if (cls.points[i].label == Label::Stop) mask[i] = true;
    // Uniting with R itself preserves interval structure the grid cannot
    // express, e.g. tails extending past the truncation window.
    return RegionSet::from_mask(g, mask).unite(R);
}

EquilibriumReport verify_equilibrium(const StoppingProblem& p, const RegionSet& R,
                                     const Grid& g, const ClassifyOptions& opts) {
    EquilibriumReport report;
    report.region = R;
    report.classification = classify(p, R, g, opts);
    report.eps_indifference = report.classification.eps_indifference;
    report.is_equilibrium = true;
    report.worst_stop_x = std::numeric_limits<double>::quiet_NaN();
    for (const auto& pc : report.classification.points) {
        if (pc.censored || pc.engine == 'e') continue;
        if (pc.label == Label::Stop) {
            report.is_equilibrium = false;
            if (pc.residual > report.worst_stop_residual) {
                report.worst_stop_residual = pc.residual;
                report.worst_stop_x = pc.x;
            }
        }
    }
    return report;
}

EquilibriumReport iterate_to_equilibrium(const StoppingProblem& p,
                                         const RegionSet& R0, const Grid& g,
                                         const ClassifyOptions& opts,
                                         int max_iter) {
    if (max_iter <= 0) max_iter = g.size() + 8;
    EquilibriumReport report;
    report.trace.regions.push_back(R0);
    std::vector<bool> mask = R0.to_mask(g);
    RegionSet current = R0;
    bool converged = false;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        const RegionSet next = theta(p, current, g, opts);
        const std::vector<bool> next_mask = next.to_mask(g);
        if (!mask_subset(mask, next_mask)) report.trace.monotone = false;
        if (next_mask == mask) {
            converged = true;
            break;
        }
        report.trace.regions.push_back(next);
        mask = next_mask;
        current = next;
    }
    report.iterations = iter;
    report.converged = converged;
    EquilibriumReport verdict = verify_equilibrium(p, current, g, opts);
    verdict.trace = report.trace;
    verdict.iterations = report.iterations;
    verdict.converged = report.converged;
    return verdict;
}

DominanceReport compare_optimality(const StoppingProblem& p,
                                   const std::vector<RegionSet>& candidates,
                                   const Grid& g, const ClassifyOptions& opts) {
    if (candidates.empty())
        throw std::invalid_argument("compare_optimality: need at least one candidate");
    DominanceReport report;
    report.candidates = candidates;
    const int m = static_cast<int>(candidates.size());
    report.min_gap.assign(m, std::vector<double>(m, 0.0));

    std::vector<std::vector<double>> values(m);
    std::vector<std::vector<double>> errs(m);
    double max_stderr = 0;
    for (int a = 0; a < m; ++a) {
        EquilibriumReport ver = verify_equilibrium(p, candidates[a], g, opts);
        report.accepted.push_back(ver.is_equilibrium);
        values[a].resize(g.size());
        errs[a].resize(g.size());
        for (int i = 0; i < g.size(); ++i) {
            const auto& pc = ver.classification.points[i];
            values[a][i] = std::max(pc.payoff, pc.value);
            errs[a][i] = pc.stderr_;
            max_stderr = std::max(max_stderr, pc.stderr_);
        }
        report.verifications.push_back(std::move(ver));
    }
    report.tol = default_eps(p, opts) + 3.0 * max_stderr * std::sqrt(2.0);

    std::optional<int> best;
    for (int a = 0; a < m; ++a) {
        bool dominates_all = true;
        for (int b = 0; b < m; ++b) {
            double worst = kInf;
            for (int i = 0; i < g.size(); ++i) {
                if (g.censored(i)) continue;
                const double gap = values[a][i] - values[b][i];
                if (std::isnan(gap)) continue;  // inf - inf
                worst = std::min(worst, gap);
            }
            report.min_gap[a][b] = worst;
            if (b != a && report.accepted[b] && worst < -report.tol)
                dominates_all = false;
        }
        if (report.accepted[a] && dominates_all && !best) best = a;
    }
    report.optimal = best;
    report.note = gbm_no_optimal_note(p);
    return report;
}

UniquenessReport uniqueness_check(const StoppingProblem& p,
                                  const RegionSet& r_star, const Grid& g,
                                  const ClassifyOptions& opts) {
    const Classification cls = classify(p, r_star, g, opts);
    UniquenessReport report;
    report.condition_holds = true;
    for (const auto& pc : cls.points) {
        if (pc.censored || pc.engine == 'e') continue;
        if (pc.label != Label::Continue) {
            report.condition_holds = false;
            if (pc.label == Label::Indifferent)
                report.indifference_points_outside.push_back(pc.x);
        }
    }
    return report;
}

std::vector<GapReport> gap_trichotomy(const StoppingProblem& p,
                                      const RegionSet& r_star,
                                      const RegionSet& t_star, const Grid& g,
                                      const ClassifyOptions& opts) {
    const std::vector<bool> rmask = r_star.to_mask(g);
    const std::vector<bool> tmask = t_star.to_mask(g);
    if (!mask_subset(rmask, tmask))
        throw std::invalid_argument("gap_trichotomy: requires R* ⊆ T* on the grid");

    const bool strict = check_log_subadditive(p.discount,
                                              default_subadditivity_grid())
                            .strict_everywhere;
    const Classification cls = classify(p, r_star, g, opts);
    const double zero_tol = 1e-12 * p.payoff_scale();

    // Enumerate the open gaps of R* that carry at least one grid point.
    std::vector<std::pair<double, double>> gaps;
    const auto ivs = r_star.intervals();
    if (ivs.empty()) {
        gaps.emplace_back(-kInf, kInf);
    } else {
        if (ivs.front().lo > g.lo) gaps.emplace_back(-kInf, ivs.front().lo);
        for (std::size_t k = 0; k + 1 < ivs.size(); ++k)
            gaps.emplace_back(ivs[k].hi, ivs[k + 1].lo);
        if (ivs.back().hi < g.hi) gaps.emplace_back(ivs.back().hi, kInf);
    }

    std::vector<GapReport> out;
    for (auto [lo, hi] : gaps) {
        GapReport gr;
        gr.lo = lo;
        gr.hi = hi;
        gr.downgraded = !strict;
        bool any_continue = false, any_nonzero_payoff = false;
        int inside = 0, inside_t = 0;
        for (int i = 0; i < g.size(); ++i) {
            const double x = g.points[i];
            if (!(x > lo && x < hi) || rmask[i]) continue;
            ++inside;
            if (tmask[i]) ++inside_t;
            if (cls.points[i].label == Label::Continue) any_continue = true;
            if (cls.points[i].payoff > zero_tol) any_nonzero_payoff = true;
        }
        if (inside == 0) continue;
        if (any_continue) {
            gr.kind = GapCase::MeetsContinuation;
            gr.consistent = inside_t == 0;
            gr.detail = gr.consistent ? "gap untouched by T*"
                                      : "T* intrudes into a continuation gap";
        } else if (any_nonzero_payoff) {
            gr.kind = GapCase::IndifferentNonzeroPayoff;
            if (inside_t == 0) {
                gr.consistent = true;
                gr.detail = "gap untouched by T*";
            } else if (inside_t == inside) {
                gr.consistent = true;
                gr.detail = "whole gap swallowed";
            } else {
                gr.consistent = false;
                gr.detail = "T* takes part of an all-or-nothing gap";
            }
        } else {
            gr.kind = GapCase::ZeroPayoff;
            gr.consistent = true;
            gr.detail = "zero payoff: arbitrary extension allowed";
        }
        if (gr.downgraded && !gr.consistent)
            gr.detail += " (warning only: strict subadditivity unavailable)";
        out.push_back(gr);
    }
    return out;
}

SolveReport solve_optimal(const StoppingProblem& p, const Grid& g,
                          const RegionSet& R0, const SolveOptions& opts) {
    SolveReport report;
    const int n = g.size();
    const double space_lo = p.model.space_lo();

    // Phase 1: plain fixed-point iteration from R0 (monotone trace).
    EquilibriumReport iter =
        iterate_to_equilibrium(p, R0, g, opts.cls, opts.max_iter);
    report.theta_trace = iter.trace;
    report.theta_iterations = iter.iterations;
    report.theta_converged = iter.converged;

    auto verified = [&](const RegionSet& r) {
        return verify_equilibrium(p, r, g, opts.cls).is_equilibrium;
    };
    auto add_candidate = [&](const std::string& source, const RegionSet& r,
                             bool ok) {
        report.candidates.push_back({source, r, ok});
    };

    add_candidate("whole-space", RegionSet::all(), true);
    {
        const RegionSet empty = RegionSet::empty();
        add_candidate("empty", empty, verified(empty));
    }
    if (iter.converged) add_candidate("theta-limit(R0)", iter.region,
                                      verified(iter.region));

    // Fixed-point limits seeded from the grid edges.
    {
        const RegionSet seed_lo = RegionSet::interval(space_lo, g.points[1]);
        EquilibriumReport lo_lim =
            iterate_to_equilibrium(p, seed_lo, g, opts.cls, opts.max_iter);
        if (lo_lim.converged)
            add_candidate("theta-limit(low-seed)", lo_lim.region,
                          lo_lim.is_equilibrium);
        const RegionSet seed_hi = RegionSet::interval(g.points[n - 2], kInf);
        EquilibriumReport hi_lim =
            iterate_to_equilibrium(p, seed_hi, g, opts.cls, opts.max_iter);
        if (hi_lim.converged)
            add_candidate("theta-limit(high-seed)", hi_lim.region,
                          hi_lim.is_equilibrium);
    }

    // Threshold family sweeps located by bisection.  Both families are
    // monotone for the problems in scope: up-thresholds verify below a
    // critical level, down-thresholds above one.  The sweep range keeps at
    // least one non-censored witness point outside every candidate.
    bool up_hit_boundary = false;
    {
        const int lo_i = 2, hi_i = n - 2;
        auto up_ok = [&](int i) {
            return verified(RegionSet::interval(g.points[i], kInf));
        };
        if (lo_i <= hi_i && up_ok(lo_i)) {
            int lo = lo_i, hi = hi_i;
            while (lo < hi) {
                const int mid = lo + (hi - lo + 1) / 2;
                if (up_ok(mid)) lo = mid;
                else hi = mid - 1;
            }
            add_candidate("up-threshold-sweep",
                          RegionSet::interval(g.points[lo], kInf), true);
            up_hit_boundary = lo == hi_i;
        }
    }
    {
        const int lo_i = 1, hi_i = n - 3;
        auto down_ok = [&](int i) {
            return verified(RegionSet::interval(space_lo, g.points[i]));
        };
        if (lo_i <= hi_i && down_ok(hi_i)) {
            int lo = lo_i, hi = hi_i;
            while (lo < hi) {
                const int mid = lo + (hi - lo) / 2;
                if (down_ok(mid)) hi = mid;
                else lo = mid + 1;
            }
            add_candidate("down-threshold-sweep",
                          RegionSet::interval(space_lo, g.points[lo]), true);
        }
    }

    // Refinement: intersect every verified candidate.
    RegionSet r_star = RegionSet::all();
    report.refinement.push_back(r_star);
    for (const auto& cand : report.candidates) {
        if (!cand.verified) continue;
        const RegionSet next = r_star.intersect(cand.region);
        if (!(next == r_star)) report.refinement.push_back(next);
        r_star = next;
    }
    {
        // A region covering every grid cell is indistinguishable from the
        // whole space here, and the whole space is an exact equilibrium.
        const auto mask = r_star.to_mask(g);
        bool all_true = true;
        for (bool b : mask) all_true = all_true && b;
        if (all_true) r_star = RegionSet::all();
    }
    if (!r_star.is_empty() && !r_star.is_all()) {
        // Censored boundary cells carry no verdicts, so ends inside them are
        // indistinguishable from the space boundary; the analytic threshold
        // candidates extend there anyway.
        std::vector<Interval> snapped(r_star.intervals().begin(),
                                      r_star.intervals().end());
        if (snapped.front().lo <= g.points[1]) snapped.front().lo = space_lo;
        if (snapped.back().hi >= g.points[n - 2]) snapped.back().hi = kInf;
        r_star = RegionSet::from_intervals(std::move(snapped));
    }
    report.r_star = r_star;
    report.verification = verify_equilibrium(p, r_star, g, opts.cls);

    // The up-sweep reaching the top of the grid signals an unbounded verified
    // threshold family (the no-optimal regimes), but only when that boundary
    // candidate actually pins R*.
    const bool boundary_binding =
        up_hit_boundary && !r_star.is_empty() && !r_star.is_all() &&
        r_star.intervals()[0].lo >= g.points[n - 2] - 1e-12 * (1.0 + g.hi);

    std::ostringstream note;
    if (!report.verification.is_equilibrium)
        note << "intersection of verified candidates fails verification on this grid; ";
    if (boundary_binding)
        note << "up-threshold family verified to the grid boundary (the family "
                "is unbounded; the intersection is a truncation artifact); ";
    const std::string analytic = gbm_no_optimal_note(p);
    if (!analytic.empty()) {
        report.no_optimal = true;
        note << analytic;
    } else if (boundary_binding || !report.verification.is_equilibrium) {
        report.no_optimal = true;
    }
    report.note = note.str();
    return report;
}

}  // namespace equistop
