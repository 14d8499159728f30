#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "equistop/discount.hpp"
#include "equistop/rng.hpp"

using namespace equistop;

TEST_CASE("evaluate matches the parametric formulas") {
    const auto hyp = DiscountFunction::hyperbolic(1.0);
    CHECK(hyp(0.0) == 1.0);
    CHECK(hyp(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    const auto exp1 = DiscountFunction::exponential(1.0);
    CHECK(exp1(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-15));
    const auto gh = DiscountFunction::generalized_hyperbolic(2.0, 3.0);
    CHECK(gh(1.0) == doctest::Approx(1.0 / 27.0).epsilon(1e-15));
    const auto pe = DiscountFunction::pseudo_exponential(0.3, 0.5, 2.0);
    CHECK(pe(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(hyp(-1.0), std::domain_error);
}

TEST_CASE("evaluate is non-increasing and vanishes at infinity") {
    const std::vector<DiscountFunction> family = {
        DiscountFunction::exponential(0.7),
        DiscountFunction::hyperbolic(2.0),
        DiscountFunction::generalized_hyperbolic(1.0, 2.0),
        DiscountFunction::pseudo_exponential(0.4, 0.3, 3.0),
    };
    CounterRng rng(11, 0);
    for (const auto& d : family) {
        for (int i = 0; i < 200; ++i) {
            double t1 = 100.0 * rng.uniform();
            double t2 = 100.0 * rng.uniform();
            if (t1 > t2) std::swap(t1, t2);
            CHECK(d(t1) >= d(t2));
        }
        CHECK(d(1e9) < 1e-3);
        CHECK(d(5.0) > 0.0);
        CHECK(d(5.0) <= 1.0);
    }
}

TEST_CASE("hyperbolic pair (1,1) margin is 1/12, strictly subadditive") {
    const auto d = DiscountFunction::hyperbolic(1.0);
    const std::vector<std::pair<double, double>> pairs = {{1.0, 1.0}};
    const auto report = check_log_subadditive(d, pairs);
    CHECK(report.holds);
    CHECK(report.strict_everywhere);
    CHECK(report.worst_margin == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("exponential is the equality case") {
    const auto d = DiscountFunction::exponential(2.0);
    const auto report = check_log_subadditive(d, default_subadditivity_grid());
    CHECK(report.holds);
    CHECK_FALSE(report.strict_everywhere);
    CHECK(std::abs(report.worst_margin) < 1e-12);
}

TEST_CASE("non-exponential built-ins are strictly subadditive on the default grid") {
    for (const auto& d : {DiscountFunction::hyperbolic(0.5),
                          DiscountFunction::generalized_hyperbolic(1.0, 2.0),
                          DiscountFunction::pseudo_exponential(0.3, 0.5, 2.0)}) {
        const auto report = check_log_subadditive(d, default_subadditivity_grid());
        CHECK(report.holds);
        CHECK(report.strict_everywhere);
        CHECK(report.worst_margin >= 0);
    }
}

TEST_CASE("log_at matches log(delta) where delta is representable") {
    for (const auto& d : {DiscountFunction::hyperbolic(0.5),
                          DiscountFunction::exponential(1.2),
                          DiscountFunction::generalized_hyperbolic(1.0, 2.0),
                          DiscountFunction::pseudo_exponential(0.3, 0.5, 2.0)}) {
        for (double t : {0.0, 0.3, 2.0, 50.0}) {
            CHECK(d.log_at(t) ==
                  doctest::Approx(std::log(d(t))).epsilon(1e-12));
        }
    }
}

TEST_CASE("generalized hyperbolic on 100 log-spaced pairs") {
    const auto d = DiscountFunction::generalized_hyperbolic(1.0, 2.0);
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < 100; ++i) {
        const double s = std::exp(-3.0 + 6.0 * i / 99.0);
        pairs.emplace_back(s, 2.0 * s);
    }
    const auto report = check_log_subadditive(d, pairs);
    CHECK(report.holds);
    CHECK(report.strict_everywhere);
}

TEST_CASE("empty grid is rejected") {
    const auto d = DiscountFunction::hyperbolic(1.0);
    std::vector<std::pair<double, double>> none;
    CHECK_THROWS_AS(check_log_subadditive(d, none), std::invalid_argument);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(DiscountFunction::exponential(0.0), std::invalid_argument);
    CHECK_THROWS_AS(DiscountFunction::hyperbolic(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(DiscountFunction::pseudo_exponential(1.5, 1, 1),
                    std::invalid_argument);
}

TEST_CASE("time_to_reach inverts delta") {
    for (const auto& d : {DiscountFunction::hyperbolic(2.0),
                          DiscountFunction::exponential(0.5),
                          DiscountFunction::pseudo_exponential(0.3, 0.5, 2.0)}) {
        const double t = d.time_to_reach(1e-4);
        CHECK(d(t) <= 1e-4 * (1 + 1e-6));
    }
}
