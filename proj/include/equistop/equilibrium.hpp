#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equistop/grid.hpp"
#include "equistop/problem.hpp"
#include "equistop/region.hpp"
#include "equistop/valuation.hpp"

namespace equistop {

enum class Label : char { Stop = 'S', Indifferent = 'I', Continue = 'C' };
enum class Engine { Auto, ClosedForm, MonteCarlo };

struct PointClassification {
    double x = 0;
    double payoff = 0;
    double value = 0;     // J(x,R); +inf marks analytic divergence
    double residual = 0;  // f(x) - J(x,R)
    double stderr_ = 0;   // MC engine only
    Label label = Label::Indifferent;
    char engine = 'c';  // 'c' closed form, 'm' Monte Carlo, 'e' exact (x in R)
    bool censored = false;
};

struct ClassifyOptions {
    Engine engine = Engine::Auto;
    /// Half-width of the indifference band.  > 0 sets an absolute band;
    /// 0 selects the default relative band 1e-6 * max(|f(x)|, |J(x,R)|).
    /// Monte Carlo points widen it to 3 * stderr either way.
    double eps_indifference = 0;
    McOptions mc;
};

struct Classification {
    std::vector<PointClassification> points;
    double eps_indifference = 0;
};

/// Stop/indifferent/continue labels per grid point under policy R.
/// Points inside R are exactly indifferent by construction.
Classification classify(const StoppingProblem& p, const RegionSet& R,
                        const Grid& g, const ClassifyOptions& opts = {});

/// Best-response region Theta(R) = S_R ∪ R, reconstructed from the grid mask.
RegionSet theta(const StoppingProblem& p, const RegionSet& R, const Grid& g,
                const ClassifyOptions& opts = {});

struct IterationTrace {
    std::vector<RegionSet> regions;  // R0, Theta(R0), Theta^2(R0), ...
    bool monotone = true;            // mask inclusion at every step
};

struct EquilibriumReport {
    RegionSet region;
    bool is_equilibrium = false;
    double worst_stop_residual = 0;  // largest S-residual outside the region
    double worst_stop_x = 0;
    Classification classification;
    IterationTrace trace;
    int iterations = 0;
    bool converged = true;
    double eps_indifference = 0;
};

/// Applies theta until the grid mask is unchanged.  Convergence is exact mask
/// equality; the monotone trace Theta^n(R0) ⊆ Theta^{n+1}(R0) is recorded and
/// asserted.  A run that exhausts max_iter reports converged = false with the
/// trace intact.
EquilibriumReport iterate_to_equilibrium(const StoppingProblem& p,
                                         const RegionSet& R0, const Grid& g,
                                         const ClassifyOptions& opts = {},
                                         int max_iter = 0);

/// Equilibrium test: no non-censored grid point outside R may be labeled S.
EquilibriumReport verify_equilibrium(const StoppingProblem& p, const RegionSet& R,
                                     const Grid& g,
                                     const ClassifyOptions& opts = {});

struct DominanceReport {
    std::vector<RegionSet> candidates;
    std::vector<bool> accepted;             // failed verification => false
    std::vector<EquilibriumReport> verifications;
    /// min over non-censored grid points of V(., A) - V(., B); row A, col B.
    std::vector<std::vector<double>> min_gap;
    std::optional<int> optimal;  // candidate dominating all accepted others
    double tol = 0;
    std::string note;
};

/// Pairwise value dominance across verified candidate equilibria.
DominanceReport compare_optimality(const StoppingProblem& p,
                                   const std::vector<RegionSet>& candidates,
                                   const Grid& g,
                                   const ClassifyOptions& opts = {});

struct UniquenessReport {
    bool condition_holds = false;  // complement of R* is all-continue
    std::vector<double> indifference_points_outside;
};

/// Checks (R*)^c = C_{R*} on the grid: the sufficient condition for R* to be
/// the unique closed optimal equilibrium.
UniquenessReport uniqueness_check(const StoppingProblem& p,
                                  const RegionSet& r_star, const Grid& g,
                                  const ClassifyOptions& opts = {});

enum class GapCase { MeetsContinuation, IndifferentNonzeroPayoff, ZeroPayoff };

struct GapReport {
    double lo = 0, hi = 0;  // open gap (lo, hi) of R*; space edges as markers
    GapCase kind = GapCase::MeetsContinuation;
    std::string detail;
    bool consistent = true;  // trichotomy assertion against T* held
    bool downgraded = false; // strict subadditivity unavailable: warning only
};

/// Per-gap classification of how a closed optimal equilibrium T* ⊇ R* may
/// differ from R*: (i) gaps meeting the continuation region must be untouched,
/// (ii) all-indifferent gaps with nonzero payoff are all-or-nothing,
/// (iii) zero-payoff gaps admit arbitrary extensions.
std::vector<GapReport> gap_trichotomy(const StoppingProblem& p,
                                      const RegionSet& r_star,
                                      const RegionSet& t_star, const Grid& g,
                                      const ClassifyOptions& opts = {});

struct CandidateRecord {
    std::string source;
    RegionSet region;
    bool verified = false;
};

struct SolveReport {
    RegionSet r_star;
    EquilibriumReport verification;
    IterationTrace theta_trace;        // plain fixed-point iteration from R0
    std::vector<RegionSet> refinement; // decreasing intersection trace
    std::vector<CandidateRecord> candidates;
    bool no_optimal = false;
    std::string note;
    int theta_iterations = 0;
    bool theta_converged = true;
};

struct SolveOptions {
    ClassifyOptions cls;
    int max_iter = 0;
};

/// Constructs the candidate optimal equilibrium as the intersection of all
/// verified closed equilibria the sweeps produce: both threshold families
/// (located by bisection), fixed-point limits seeded from the grid edges and
/// from R0, the whole space, and the empty set when it verifies.  On this
/// finite lattice the intersection realizes the continuum construction
/// R* = ∩ {closed equilibria}.
SolveReport solve_optimal(const StoppingProblem& p, const Grid& g,
                          const RegionSet& R0 = RegionSet::empty(),
                          const SolveOptions& opts = {});

}  // namespace equistop
