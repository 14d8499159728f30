#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <limits>

#include "equistop/errors.hpp"
#include "equistop/valuation.hpp"

using namespace equistop;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Frozen high-precision values for the closed-form regression points.
constexpr double kRbmValueHalfToOne = 0.65584698760818109;   // J(0.5,[1,inf)), beta=1
constexpr double kGbmKappaHalfToOne = 0.46070360886745361;   // nu=0, beta=sigma=1

StoppingProblem bessel_problem(double beta = 1.0) {
    return {DiffusionModel::reflected_bm(), PayoffFunction::identity(),
            DiscountFunction::hyperbolic(beta), 0.0, 10.0};
}

StoppingProblem put_problem(double mu = 0.0, double sigma = 1.0,
                            double beta = 1.0, double strike = 10.0) {
    return {DiffusionModel::gbm(mu, sigma), PayoffFunction::put(strike),
            DiscountFunction::hyperbolic(beta)};
}
}  // namespace

TEST_CASE("inside the region the value is the payoff") {
    const auto p = bessel_problem();
    const auto r = RegionSet::interval(1.0, kInf);
    CHECK(value_closed_form(p, 2.5, r) == 2.5);
    CHECK(value_closed_form(p, 1.0, r) == 1.0);
}

TEST_CASE("GBM with upward potential diverges on the empty region") {
    const StoppingProblem p{DiffusionModel::gbm(1.0, 1.0),
                            PayoffFunction::identity(),
                            DiscountFunction::hyperbolic(1.0)};
    CHECK(value_closed_form(p, 1.0, RegionSet::empty()) == kInf);
    CHECK(value_V_closed(p, 1.0, RegionSet::empty()) == kInf);
    CHECK_THROWS_AS(value_monte_carlo(p, 1.0, RegionSet::empty(), {}),
                    DivergenceError);
}

TEST_CASE("GBM with nu <= 0 vanishes on the empty region") {
    const StoppingProblem p{DiffusionModel::gbm(0.0, 1.0),
                            PayoffFunction::identity(),
                            DiscountFunction::hyperbolic(1.0)};
    CHECK(value_closed_form(p, 1.0, RegionSet::empty()) == 0.0);
    McOptions mc;
    mc.paths = 500;
    const auto est = value_monte_carlo(p, 1.0, RegionSet::empty(), mc);
    CHECK(est.estimate == 0.0);
}

TEST_CASE("reflected model threshold values against frozen constants") {
    const auto p = bessel_problem();
    const auto r = RegionSet::interval(1.0, kInf);
    CHECK(value_closed_form(p, 0.5, r) ==
          doctest::Approx(kRbmValueHalfToOne).epsilon(1e-10));
}

TEST_CASE("GBM kappa value against frozen constant") {
    const StoppingProblem p{DiffusionModel::gbm(0.5, 1.0),  // nu = 0
                            PayoffFunction::identity(),
                            DiscountFunction::hyperbolic(1.0)};
    const auto r = RegionSet::interval(1.0, kInf);
    CHECK(value_closed_form(p, 0.5, r) ==
          doctest::Approx(kGbmKappaHalfToOne).epsilon(1e-10));
}

TEST_CASE("the unreachable GBM boundary point is not a region boundary") {
    // {0} is representable in a region but no GBM path reaches it: a region
    // consisting only of it behaves exactly like the empty region.
    const StoppingProblem p{DiffusionModel::gbm(0.0, 1.0),
                            PayoffFunction::identity(),
                            DiscountFunction::hyperbolic(1.0)};
    const auto degenerate = RegionSet::interval(0.0, 0.0);
    CHECK(value_closed_form(p, 1.0, degenerate) == 0.0);
    McOptions mc;
    mc.paths = 200;
    CHECK(value_monte_carlo(p, 1.0, degenerate, mc).estimate == 0.0);
}

TEST_CASE("tabulated payoff has no closed form") {
    const StoppingProblem p{DiffusionModel::gbm(0.0, 1.0),
                            PayoffFunction::tabulated({0, 1, 2}, {0, 1, 0}),
                            DiscountFunction::hyperbolic(1.0)};
    CHECK_THROWS_AS(value_closed_form(p, 1.5, RegionSet::interval(0, 0.5)),
                    NoClosedFormError);
}

TEST_CASE("value_V basics") {
    const auto p = put_problem();
    const auto r = RegionSet::interval(0.0, 4.0);
    // x >= K: f = 0 so V = J >= 0.
    const double j = value_closed_form(p, 12.0, r);
    CHECK(j > 0);
    CHECK(value_V_closed(p, 12.0, r) == j);
    CHECK(value_V_closed(p, 2.0, r) == p.payoff(2.0));
}

TEST_CASE("whole region short-circuits Monte Carlo") {
    const auto p = bessel_problem();
    McOptions mc;
    mc.paths = 200;
    const auto r = value_monte_carlo(p, 0.7, RegionSet::all(), mc);
    CHECK(r.estimate == p.payoff(0.7));
    CHECK(r.stderr_ == 0.0);
}

TEST_CASE("Monte Carlo agrees with the closed form (reflected threshold)") {
    const auto p = bessel_problem();
    const auto region = RegionSet::interval(1.0, kInf);
    McOptions mc;
    mc.paths = 20000;
    mc.seed = 20240810;
    const auto est = value_monte_carlo(p, 0.5, region, mc);
    const double exact = value_closed_form(p, 0.5, region);
    CHECK(std::abs(est.estimate - exact) < 3.0 * est.stderr_);
    CHECK(est.truncation_bias < 5e-3);
}

TEST_CASE("Monte Carlo agrees with the closed form (put)") {
    const auto p = put_problem();
    const auto region = RegionSet::interval(0.0, 4.0);
    McOptions mc;
    mc.paths = 20000;
    mc.seed = 99;
    const auto est = value_monte_carlo(p, 6.0, region, mc);
    const double exact = value_closed_form(p, 6.0, region);
    CHECK(std::abs(est.estimate - exact) < 3.0 * est.stderr_);
}

TEST_CASE("Monte Carlo is reproducible for a fixed seed") {
    const auto p = bessel_problem();
    const auto region = RegionSet::interval(1.0, kInf);
    McOptions mc;
    mc.paths = 500;
    mc.seed = 7;
    const auto a = value_monte_carlo(p, 0.5, region, mc);
    const auto b = value_monte_carlo(p, 0.5, region, mc);
    CHECK(a.estimate == b.estimate);
    CHECK(a.stderr_ == b.stderr_);
}

TEST_CASE("nested equilibria dominate pointwise (closed form)") {
    // For thresholds a2 >= a1 (both equilibria), [a2,inf) ⊆ [a1,inf) yields
    // J(x, [a2,inf)) >= J(x, [a1,inf)) everywhere.
    const auto p = bessel_problem();
    const auto small = RegionSet::interval(0.9, kInf);
    const auto large = RegionSet::interval(0.5, kInf);
    for (double x = 0.05; x < 3.0; x += 0.05) {
        const double js = small.contains(x) ? p.payoff(x) : value_closed_form(p, x, small);
        const double jl = large.contains(x) ? p.payoff(x) : value_closed_form(p, x, large);
        const double vs = std::max(p.payoff(x), js);
        const double vl = std::max(p.payoff(x), jl);
        CHECK(vs >= vl - 1e-10);
    }
}

TEST_CASE("GBM identity values scale linearly with the state") {
    const StoppingProblem p{DiffusionModel::gbm(0.1, 1.0),
                            PayoffFunction::identity(),
                            DiscountFunction::hyperbolic(1.0)};
    const auto r = RegionSet::from_intervals({{0.0, 1.0}, {4.0, kInf}});
    const double base = value_closed_form(p, 2.0, r);
    for (double alpha : {0.5, 2.0, 7.0}) {
        const auto scaled = RegionSet::from_intervals({{0.0, alpha}, {4.0 * alpha, kInf}});
        CHECK(value_closed_form(p, 2.0 * alpha, scaled) ==
              doctest::Approx(alpha * base).epsilon(1e-10));
    }
}

TEST_CASE("kappa-style value is increasing and convex below the threshold") {
    const StoppingProblem p{DiffusionModel::gbm(0.0, 1.0),  // nu = -1/2
                            PayoffFunction::identity(),
                            DiscountFunction::hyperbolic(1.0)};
    const auto r = RegionSet::interval(2.0, kInf);
    const double h = 1e-3;
    for (double x = 0.2; x < 1.9; x += 0.1) {
        const double a = value_closed_form(p, x - h, r);
        const double b = value_closed_form(p, x, r);
        const double c = value_closed_form(p, x + h, r);
        CHECK(c > a);                      // increasing
        CHECK(a + c - 2.0 * b > -1e-12);   // convex
    }
}

TEST_CASE("eta-style value is decreasing and convex above the threshold") {
    const auto p = put_problem();
    const auto r = RegionSet::interval(0.0, 4.0);
    const double h = 1e-3;
    for (double x = 4.5; x < 12.0; x += 0.5) {
        const double a = value_closed_form(p, x - h, r);
        const double b = value_closed_form(p, x, r);
        const double c = value_closed_form(p, x + h, r);
        CHECK(c < a);
        CHECK(a + c - 2.0 * b > -1e-12);
    }
}

TEST_CASE("integrability verdicts") {
    const StoppingProblem up{DiffusionModel::gbm(1.0, 1.0),
                             PayoffFunction::identity(),
                             DiscountFunction::hyperbolic(1.0)};
    const auto r1 = check_integrability(up);
    CHECK_FALSE(r1.e34_holds);
    CHECK_FALSE(r1.e32_holds);
    CHECK(r1.basis == "analytic");

    const auto r2 = check_integrability(put_problem(1.0));
    CHECK(r2.e34_holds);
    CHECK(r2.e32_holds);

    const auto r3 = check_integrability(bessel_problem());
    CHECK(r3.e34_holds);
    CHECK(r3.e32_holds);

    const StoppingProblem mid{DiffusionModel::gbm(0.0, 1.0),
                              PayoffFunction::identity(),
                              DiscountFunction::hyperbolic(1.0)};
    const auto r4 = check_integrability(mid);  // nu = -1/2
    CHECK(r4.e34_holds);
    CHECK(r4.e32_holds);

    const StoppingProblem shallow{DiffusionModel::gbm(0.3, 1.0),
                                  PayoffFunction::identity(),
                                  DiscountFunction::hyperbolic(1.0)};
    const auto r5 = check_integrability(shallow);  // nu in (-1/2, 0]
    CHECK(r5.e34_holds);
    CHECK_FALSE(r5.e32_holds);
}

TEST_CASE("non-built-in combinations get the empirical tail verdict") {
    const StoppingProblem p{
        DiffusionModel::reflected_bm(),
        PayoffFunction::tabulated({0.0, 1.0, 2.0, 3.0}, {0.5, 1.5, 0.5, 0.5}),
        DiscountFunction::hyperbolic(1.0), 0.0, 10.0};
    const auto r = check_integrability(p);
    CHECK(r.basis == "empirical");
    // Bounded payoff with vanishing discount: both conditions should show up
    // as satisfied in the sample.
    CHECK(r.e34_holds);
    CHECK(r.e32_holds);
}
