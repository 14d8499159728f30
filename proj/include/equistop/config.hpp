#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "equistop/equilibrium.hpp"
#include "equistop/problem.hpp"

namespace equistop {

/// Declarative run description; everything has a default except the problem.
/// Round-trips unchanged through to_json_text / from_json_text.
struct RunConfig {
    // problem
    std::string model_kind = "gbm";  // "gbm" | "reflected-bm"
    double mu = 0;
    double sigma = 1;
    std::string payoff_kind = "identity";  // identity|put|counterexample|tabulated
    double strike = 0;
    double counterexample_beta = 1.0;
    double b_multiplier = 2.0;
    std::vector<double> tabulated_x, tabulated_f;
    std::string discount_kind = "hyperbolic";
    std::map<std::string, double> discount_params = {{"beta", 1.0}};

    // domain + grid (lo == hi == 0 means model defaults)
    double domain_lo = 0;
    double domain_hi = 0;
    int grid_n = 2000;

    // engine + tolerances
    std::string engine = "closed-form";  // closed-form | monte-carlo | both
    double eps_indifference = 0;         // 0 = auto
    double root_tol = 1e-10;

    // Monte Carlo
    long mc_paths = 100000;
    std::uint64_t seed = 42;
    double mc_step = 1e-3;
    double mc_step_growth = 0.01;
    double mc_horizon = 0;  // 0 = auto

    // run
    std::string out_dir = "out";
    int max_iter = 0;  // 0 = grid size + 8
    std::string start_region = "empty";

    static RunConfig from_json_text(const std::string& text);
    std::string to_json_text(int indent = 2) const;
    static RunConfig load(const std::string& path);

    StoppingProblem build_problem() const;
    Grid build_grid(const StoppingProblem& p) const;
    ClassifyOptions classify_options(const StoppingProblem& p) const;

    /// Symbolic constants available in region literals for this problem:
    /// a_star, b_star, lambda, put_threshold, nu, K, beta, mu, sigma.
    std::map<std::string, double> region_macros(const StoppingProblem& p) const;
};

}  // namespace equistop
