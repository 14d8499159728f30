#include "equistop/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "equistop/errors.hpp"
#include "equistop/examples.hpp"
#include "equistop/version.hpp"

namespace equistop {

using nlohmann::json;
namespace fs = std::filesystem;

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string classification_csv(const Classification& cls, char sep,
                               bool header_comment) {
    std::string text;
    if (header_comment) text += "# ";
    text += "x";
    for (const char* col : {"f", "J", "V", "label", "residual", "stderr"}) {
        text += sep;
        text += col;
    }
    text += "\n";
    for (const auto& pc : cls.points) {
        const double V = std::max(pc.payoff, pc.value);
        text += csv_number(pc.x);
        text += sep;
        text += csv_number(pc.payoff);
        text += sep;
        text += csv_number(pc.value);
        text += sep;
        text += csv_number(V);
        text += sep;
        text += static_cast<char>(pc.label);
        text += sep;
        text += csv_number(pc.residual);
        text += sep;
        text += csv_number(pc.stderr_);
        text += "\n";
    }
    return text;
}

json manifest_json(const RunConfig& config, const StoppingProblem& p,
                   const Grid& g, const SolveReport& report) {
    json m;
    m["version"] = kVersion;
    m["config"] = json::parse(config.to_json_text());
    json& r = m["resolved"];
    r["grid"] = {{"lo", g.lo}, {"hi", g.hi}, {"n", g.n},
                 {"scale", g.scale == GridScale::Log ? "log" : "linear"}};
    r["eps_indifference"] = report.verification.eps_indifference;
    r["seed"] = config.seed;
    r["engine"] = config.engine;
    r["region"] = report.r_star.to_string();
    r["is_equilibrium"] = report.verification.is_equilibrium;
    r["no_optimal"] = report.no_optimal;
    r["note"] = report.note;
    r["theta_iterations"] = report.theta_iterations;
    for (const auto& [name, value] : config.region_macros(p))
        r["macros"][name] = value;
    return m;
}

}  // namespace

int cmd_solve(const RunConfig& config, std::ostream& out) {
    const StoppingProblem p = config.build_problem();
    const Grid g = config.build_grid(p);
    const ClassifyOptions opts = config.classify_options(p);
    const RegionSet r0 =
        RegionSet::parse(config.start_region, config.region_macros(p));

    SolveOptions solve_opts;
    solve_opts.cls = opts;
    solve_opts.max_iter = config.max_iter;
    const SolveReport report = solve_optimal(p, g, r0, solve_opts);

    fs::create_directories(config.out_dir);
    const fs::path dir(config.out_dir);

    write_file(dir / "classification.csv",
               classification_csv(report.verification.classification, ',', false));
    write_file(dir / "classification.dat",
               classification_csv(report.verification.classification, ' ', true));

    std::string trace = "phase,step,region\n";
    for (std::size_t i = 0; i < report.theta_trace.regions.size(); ++i)
        trace += "theta," + std::to_string(i) + ",\"" +
                 report.theta_trace.regions[i].to_string() + "\"\n";
    for (std::size_t i = 0; i < report.refinement.size(); ++i)
        trace += "refine," + std::to_string(i) + ",\"" +
                 report.refinement[i].to_string() + "\"\n";
    write_file(dir / "trace.csv", trace);

    std::string cands = "source,region,verified\n";
    for (const auto& c : report.candidates)
        cands += c.source + ",\"" + c.region.to_string() + "\"," +
                 (c.verified ? "1" : "0") + "\n";
    write_file(dir / "candidates.csv", cands);

    write_file(dir / "manifest.json", manifest_json(config, p, g, report).dump(2) + "\n");

    if (config.engine == "both") {
        // Cross-engine audit at a spread of non-censored states.
        std::vector<double> states;
        const int stride = std::max(1, g.size() / 16);
        for (int i = 1; i + 1 < g.size(); i += stride) states.push_back(g.points[i]);
        cmd_oracle(config, states, report.r_star.to_string(), out);
    }

    out << "region: " << report.r_star.to_string() << "\n"
        << "is_equilibrium: " << (report.verification.is_equilibrium ? "yes" : "no")
        << "\n";
    if (report.no_optimal) out << "no_optimal: yes\n";
    if (!report.note.empty()) out << "note: " << report.note << "\n";

    if (!report.theta_converged) {
        out << "error: fixed-point iteration did not converge within the "
               "iteration budget (trace written)\n";
        return kExitNoConvergence;
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& config, const std::string& region_literal,
               std::ostream& out) {
    const StoppingProblem p = config.build_problem();
    const Grid g = config.build_grid(p);
    const RegionSet region =
        RegionSet::parse(region_literal, config.region_macros(p));
    const EquilibriumReport report =
        verify_equilibrium(p, region, g, config.classify_options(p));

    fs::create_directories(config.out_dir);
    json j;
    j["region"] = region.to_string();
    j["is_equilibrium"] = report.is_equilibrium;
    j["eps_indifference"] = report.eps_indifference;
    if (!report.is_equilibrium) {
        j["worst_stop_residual"] = report.worst_stop_residual;
        j["worst_stop_x"] = report.worst_stop_x;
    }
    write_file(fs::path(config.out_dir) / "verify.json", j.dump(2) + "\n");

    out << "region: " << region.to_string() << "\n"
        << "is_equilibrium: " << (report.is_equilibrium ? "yes" : "no") << "\n";
    if (!report.is_equilibrium)
        out << "worst stop residual " << csv_number(report.worst_stop_residual)
            << " at x=" << csv_number(report.worst_stop_x) << "\n";
    return report.is_equilibrium ? kExitOk : kExitVerifyFailed;
}

int cmd_classify_gbm(double mu, double sigma, double beta, std::ostream& out) {
    const GbmCase c = gbm_classify(mu, sigma, beta);
    out << "case: " << gbm_case_name(c.id) << "\n"
        << "nu: " << csv_number(c.nu) << "\n"
        << "boundary sqrt(beta*pi/(2*sigma^2)): " << csv_number(c.boundary) << "\n";
    if (c.nu_star) out << "nu_star: " << csv_number(*c.nu_star) << "\n";
    if (c.boundary_band) out << "note: parameters within 1e-10 of a case boundary\n";
    out << "verdict: " << c.verdict << "\n";
    return kExitOk;
}

int cmd_compare(const RunConfig& config,
                const std::vector<std::string>& region_literals,
                std::ostream& out) {
    if (region_literals.empty())
        throw std::invalid_argument("compare: need at least one region literal");
    const StoppingProblem p = config.build_problem();
    const Grid g = config.build_grid(p);
    const auto macros = config.region_macros(p);

    std::vector<RegionSet> candidates;
    for (const auto& lit : region_literals)
        candidates.push_back(RegionSet::parse(lit, macros));
    const DominanceReport report =
        compare_optimality(p, candidates, g, config.classify_options(p));

    fs::create_directories(config.out_dir);
    std::string csv = "region_a,region_b,min_gap,a_dominates_b\n";
    for (std::size_t a = 0; a < candidates.size(); ++a)
        for (std::size_t b = 0; b < candidates.size(); ++b) {
            if (a == b) continue;
            csv += "\"" + candidates[a].to_string() + "\",\"" +
                   candidates[b].to_string() + "\"," +
                   csv_number(report.min_gap[a][b]) + "," +
                   (report.min_gap[a][b] >= -report.tol ? "1" : "0") + "\n";
        }
    write_file(fs::path(config.out_dir) / "compare.csv", csv);

    for (std::size_t a = 0; a < candidates.size(); ++a)
        if (!report.accepted[a])
            out << "rejected: " << candidates[a].to_string()
                << " (not an equilibrium; worst stop residual "
                << csv_number(report.verifications[a].worst_stop_residual)
                << " at x="
                << csv_number(report.verifications[a].worst_stop_x) << ")\n";
    if (report.optimal)
        out << "optimal among candidates: "
            << candidates[*report.optimal].to_string() << "\n";
    else
        out << "optimal among candidates: none\n";
    if (!report.note.empty()) out << "note: " << report.note << "\n";
    return kExitOk;
}

int cmd_oracle(const RunConfig& config, const std::vector<double>& states,
               const std::string& region_literal, std::ostream& out) {
    if (states.empty())
        throw std::invalid_argument("oracle: need at least one state");
    const StoppingProblem p = config.build_problem();
    const RegionSet region =
        RegionSet::parse(region_literal, config.region_macros(p));

    McOptions mc = config.classify_options(p).mc;
    fs::create_directories(config.out_dir);
    std::string csv = "x,J_closed,J_mc,stderr,agree\n";
    int agreed = 0, comparable = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const double x = states[i];
        const double closed = value_closed_form(p, x, region);
        std::string agree;
        double estimate = std::numeric_limits<double>::quiet_NaN();
        double se = 0;
        if (closed == std::numeric_limits<double>::infinity()) {
            agree = "divergent";
        } else {
            McOptions row = mc;
            row.seed = mc.seed + i;
            const McResult r = value_monte_carlo(p, x, region, row);
            estimate = r.estimate;
            se = r.stderr_;
            const bool ok = std::abs(closed - estimate) <= 3.0 * se ||
                            closed == estimate;
            agree = ok ? "1" : "0";
            ++comparable;
            if (ok) ++agreed;
        }
        csv += csv_number(x) + "," + csv_number(closed) + "," +
               csv_number(estimate) + "," + csv_number(se) + "," + agree + "\n";
    }
    write_file(fs::path(config.out_dir) / "oracle.csv", csv);
    out << "oracle rows: " << states.size() << ", comparable: " << comparable
        << ", agree: " << agreed << "\n";
    return kExitOk;
}

}  // namespace equistop
