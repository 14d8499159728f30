#include "equistop/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "equistop/examples.hpp"

namespace equistop {

using nlohmann::json;

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    RunConfig c;
    if (!j.contains("problem"))
        throw std::invalid_argument("config: missing required 'problem' section");
    const json& prob = j.at("problem");

    const json& model = prob.at("model");
    c.model_kind = model.at("kind").get<std::string>();
    if (c.model_kind != "gbm" && c.model_kind != "reflected-bm")
        throw std::invalid_argument("config: model.kind must be gbm or reflected-bm");
    c.mu = model.value("mu", 0.0);
    c.sigma = model.value("sigma", 1.0);

    const json& payoff = prob.at("payoff");
    c.payoff_kind = payoff.at("kind").get<std::string>();
    c.strike = payoff.value("strike", 0.0);
    c.counterexample_beta = payoff.value("beta", 1.0);
    c.b_multiplier = payoff.value("b_multiplier", 2.0);
    if (payoff.contains("x")) c.tabulated_x = payoff.at("x").get<std::vector<double>>();
    if (payoff.contains("f")) c.tabulated_f = payoff.at("f").get<std::vector<double>>();

    const json& discount = prob.at("discount");
    c.discount_kind = discount.at("kind").get<std::string>();
    c.discount_params.clear();
    if (discount.contains("params"))
        for (auto it = discount.at("params").begin(); it != discount.at("params").end(); ++it)
            c.discount_params[it.key()] = it.value().get<double>();

    if (prob.contains("domain")) {
        c.domain_lo = prob.at("domain").value("lo", 0.0);
        c.domain_hi = prob.at("domain").value("hi", 0.0);
    }
    if (j.contains("grid")) c.grid_n = j.at("grid").value("n", 2000);
    c.engine = j.value("engine", std::string("closed-form"));
    if (j.contains("tolerances")) {
        c.eps_indifference = j.at("tolerances").value("eps_indifference", 0.0);
        c.root_tol = j.at("tolerances").value("root_tol", 1e-10);
    }
    if (j.contains("mc")) {
        const json& mc = j.at("mc");
        c.mc_paths = mc.value("paths", 100000L);
        c.seed = mc.value("seed", static_cast<std::uint64_t>(42));
        c.mc_step = mc.value("step", 1e-3);
        c.mc_step_growth = mc.value("step_growth", 0.01);
        c.mc_horizon = mc.value("horizon", 0.0);
    }
    if (j.contains("run")) {
        const json& run = j.at("run");
        c.out_dir = run.value("out_dir", std::string("out"));
        c.max_iter = run.value("max_iter", 0);
        c.start_region = run.value("start_region", std::string("empty"));
    }
    return c;
}

std::string RunConfig::to_json_text(int indent) const {
    json j;
    j["problem"]["model"]["kind"] = model_kind;
    j["problem"]["model"]["mu"] = mu;
    j["problem"]["model"]["sigma"] = sigma;
    j["problem"]["payoff"]["kind"] = payoff_kind;
    j["problem"]["payoff"]["strike"] = strike;
    j["problem"]["payoff"]["beta"] = counterexample_beta;
    j["problem"]["payoff"]["b_multiplier"] = b_multiplier;
    if (!tabulated_x.empty()) {
        j["problem"]["payoff"]["x"] = tabulated_x;
        j["problem"]["payoff"]["f"] = tabulated_f;
    }
    j["problem"]["discount"]["kind"] = discount_kind;
    for (const auto& [k, v] : discount_params)
        j["problem"]["discount"]["params"][k] = v;
    j["problem"]["domain"]["lo"] = domain_lo;
    j["problem"]["domain"]["hi"] = domain_hi;
    j["grid"]["n"] = grid_n;
    j["engine"] = engine;
    j["tolerances"]["eps_indifference"] = eps_indifference;
    j["tolerances"]["root_tol"] = root_tol;
    j["mc"]["paths"] = mc_paths;
    j["mc"]["seed"] = seed;
    j["mc"]["step"] = mc_step;
    j["mc"]["step_growth"] = mc_step_growth;
    j["mc"]["horizon"] = mc_horizon;
    j["run"]["out_dir"] = out_dir;
    j["run"]["max_iter"] = max_iter;
    j["run"]["start_region"] = start_region;
    return j.dump(indent);
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

namespace {
double require_param(const std::map<std::string, double>& params,
                     const std::string& name, const std::string& kind) {
    auto it = params.find(name);
    if (it == params.end())
        throw std::invalid_argument("config: discount kind '" + kind +
                                    "' requires parameter '" + name + "'");
    return it->second;
}
}  // namespace

StoppingProblem RunConfig::build_problem() const {
    DiffusionModel model = model_kind == "gbm" ? DiffusionModel::gbm(mu, sigma)
                                               : DiffusionModel::reflected_bm();

    DiscountFunction discount = DiscountFunction::hyperbolic(1.0);
    if (discount_kind == "hyperbolic")
        discount = DiscountFunction::hyperbolic(require_param(discount_params, "beta", discount_kind));
    else if (discount_kind == "exponential")
        discount = DiscountFunction::exponential(require_param(discount_params, "alpha", discount_kind));
    else if (discount_kind == "generalized-hyperbolic")
        discount = DiscountFunction::generalized_hyperbolic(
            require_param(discount_params, "beta", discount_kind),
            require_param(discount_params, "k", discount_kind));
    else if (discount_kind == "pseudo-exponential")
        discount = DiscountFunction::pseudo_exponential(
            require_param(discount_params, "lambda", discount_kind),
            require_param(discount_params, "r1", discount_kind),
            require_param(discount_params, "r2", discount_kind));
    else
        throw std::invalid_argument("config: unknown discount kind " + discount_kind);

    PayoffFunction payoff = PayoffFunction::identity();
    if (payoff_kind == "identity") {
        payoff = PayoffFunction::identity();
    } else if (payoff_kind == "put") {
        payoff = PayoffFunction::put(strike);
    } else if (payoff_kind == "counterexample") {
        const double a_star = bessel_threshold(counterexample_beta);
        payoff = PayoffFunction::counterexample(counterexample_beta, a_star,
                                                b_multiplier * a_star);
    } else if (payoff_kind == "tabulated") {
        payoff = PayoffFunction::tabulated(tabulated_x, tabulated_f);
    } else {
        throw std::invalid_argument("config: unknown payoff kind " + payoff_kind);
    }

    if (domain_lo == 0.0 && domain_hi == 0.0)
        return StoppingProblem(model, payoff, discount);
    return StoppingProblem(model, payoff, discount, domain_lo, domain_hi);
}

Grid RunConfig::build_grid(const StoppingProblem& p) const {
    return p.make_grid(grid_n);
}

ClassifyOptions RunConfig::classify_options(const StoppingProblem& p) const {
    (void)p;
    ClassifyOptions opts;
    if (engine == "closed-form" || engine == "both") opts.engine = Engine::ClosedForm;
    else if (engine == "monte-carlo") opts.engine = Engine::MonteCarlo;
    else if (engine == "auto") opts.engine = Engine::Auto;
    else throw std::invalid_argument("config: unknown engine " + engine);
    opts.eps_indifference = eps_indifference;
    opts.mc.paths = mc_paths;
    opts.mc.seed = seed;
    opts.mc.base_step = mc_step;
    opts.mc.step_growth = mc_step_growth;
    opts.mc.horizon = mc_horizon;
    return opts;
}

std::map<std::string, double> RunConfig::region_macros(const StoppingProblem& p) const {
    std::map<std::string, double> macros;
    macros["mu"] = mu;
    macros["sigma"] = sigma;
    if (p.payoff.kind() == PayoffKind::Put) macros["K"] = strike;
    if (p.discount.kind() == DiscountKind::Hyperbolic) {
        const double beta = p.discount.beta();
        macros["beta"] = beta;
        if (p.model.kind == ModelKind::ReflectedBm)
            macros["a_star"] = bessel_threshold(beta, root_tol);
        if (p.model.kind == ModelKind::Gbm) {
            macros["lambda"] = put_lambda(mu, sigma, beta);
            if (p.payoff.kind() == PayoffKind::Put)
                macros["put_threshold"] = put_threshold(mu, sigma, beta, strike);
        }
    }
    if (p.model.kind == ModelKind::Gbm) macros["nu"] = p.model.nu();
    if (p.payoff.kind() == PayoffKind::Counterexample) {
        macros["a_star"] = p.payoff.a_star();
        macros["b_star"] = p.payoff.b_star();
    }
    return macros;
}

}  // namespace equistop
