#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "equistop/cli.hpp"
#include "equistop/errors.hpp"
#include "equistop/version.hpp"

namespace {

equistop::RunConfig load_config(const std::string& path,
                                const std::optional<std::uint64_t>& seed,
                                const std::optional<std::string>& out_dir) {
    equistop::RunConfig config = equistop::RunConfig::load(path);
    if (seed) config.seed = *seed;
    if (out_dir) config.out_dir = *out_dir;
    return config;
}

std::vector<double> parse_state_list(const std::string& text) {
    std::vector<double> states;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) states.push_back(std::stod(item));
    }
    return states;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equistop: equilibrium stopping regions under non-exponential discounting"};
    app.set_version_flag("--version", equistop::kVersion);
    app.require_subcommand(1);

    std::string config_path, region, states_text;
    std::vector<std::string> regions;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    double mu = 0, sigma = 1, beta = 1;

    auto add_common = [&](CLI::App* cmd, bool needs_region) {
        cmd->add_option("--config", config_path, "JSON run configuration")->required();
        cmd->add_option("--seed", seed, "override the Monte Carlo seed");
        cmd->add_option("--out", out_dir, "override the output directory");
        if (needs_region)
            cmd->add_option("--region", region, "region literal, e.g. \"[1,2]U[4,inf)\"")
                ->required();
    };

    CLI::App* solve = app.add_subcommand("solve", "construct the optimal equilibrium");
    add_common(solve, false);

    CLI::App* verify = app.add_subcommand("verify", "verify a region as an equilibrium");
    add_common(verify, true);

    CLI::App* classify = app.add_subcommand("classify-gbm",
                                            "classify the GBM liquidation problem");
    classify->add_option("--mu", mu, "GBM drift")->required();
    classify->add_option("--sigma", sigma, "GBM volatility")->required();
    classify->add_option("--beta", beta, "hyperbolic discount rate")->required();

    CLI::App* compare = app.add_subcommand("compare", "pairwise dominance of candidates");
    add_common(compare, false);
    // One value per occurrence: --region A --region B.  Greedy multi-value
    // parsing would re-read bracketed literals as container syntax.
    compare->add_option("--region", regions, "candidate region literal (repeatable)")
        ->required()
        ->allow_extra_args(false);

    CLI::App* oracle = app.add_subcommand("oracle", "closed form vs Monte Carlo audit");
    add_common(oracle, true);
    oracle->add_option("--x", states_text, "comma-separated states")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed())
            return equistop::cmd_solve(load_config(config_path, seed, out_dir),
                                       std::cout);
        if (verify->parsed())
            return equistop::cmd_verify(load_config(config_path, seed, out_dir),
                                        region, std::cout);
        if (classify->parsed())
            return equistop::cmd_classify_gbm(mu, sigma, beta, std::cout);
        if (compare->parsed())
            return equistop::cmd_compare(load_config(config_path, seed, out_dir),
                                         regions, std::cout);
        if (oracle->parsed())
            return equistop::cmd_oracle(load_config(config_path, seed, out_dir),
                                        parse_state_list(states_text), region,
                                        std::cout);
    } catch (const equistop::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return equistop::kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return equistop::kExitConfigError;
    }
    return equistop::kExitConfigError;
}
