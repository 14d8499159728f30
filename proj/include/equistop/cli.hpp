#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "equistop/config.hpp"

namespace equistop {

// Exit codes: 0 success/verified, 2 verification failed, 3 non-convergence,
// 4 config error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitConfigError = 4;

/// Solve for the optimal equilibrium; writes classification.csv,
/// classification.dat, trace.csv, candidates.csv and manifest.json into the
/// config's output directory.
int cmd_solve(const RunConfig& config, std::ostream& out);

/// Verify a region literal as an equilibrium; writes verify.json.
int cmd_verify(const RunConfig& config, const std::string& region_literal,
               std::ostream& out);

/// Print the GBM liquidation-problem classification with derived constants.
int cmd_classify_gbm(double mu, double sigma, double beta, std::ostream& out);

/// Pairwise dominance comparison of candidate equilibria; writes compare.csv.
int cmd_compare(const RunConfig& config,
                const std::vector<std::string>& region_literals,
                std::ostream& out);

/// Cross-engine audit: closed form vs Monte Carlo at the given states;
/// writes oracle.csv with 3-sigma agreement flags.
int cmd_oracle(const RunConfig& config, const std::vector<double>& states,
               const std::string& region_literal, std::ostream& out);

/// "%.12g" formatting used for every numeric CSV field.
std::string csv_number(double v);

}  // namespace equistop
