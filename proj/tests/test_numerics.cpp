#include <doctest.h>

#include <cmath>

#include "equistop/errors.hpp"
#include "equistop/quadrature.hpp"
#include "equistop/rng.hpp"
#include "equistop/rootfind.hpp"

using namespace equistop;

namespace {
// Frozen from a high-precision run of the defining equation
// a ∫ e^{-s} sqrt(2s) tanh(a sqrt(2s)) ds = 1 (256-digit arithmetic).
constexpr double kAStarBeta1 = 0.9464750221074477;
}

TEST_CASE("laguerre rule invariants") {
    for (int order : {16, 64, 128, 256}) {
        const auto& rule = QuadratureRule::laguerre(order);
        REQUIRE(rule.order() == order);
        double total = 0;
        double prev = 0;
        for (int i = 0; i < order; ++i) {
            CHECK(rule.nodes()[i] > prev);
            // Weights at the far tail underflow to zero beyond order ~200.
            CHECK(rule.weights()[i] >= 0);
            prev = rule.nodes()[i];
            total += rule.weights()[i];
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));  // ∫ e^{-s} ds
    }
}

TEST_CASE("integrate_exp basic values") {
    CHECK(integrate_exp([](double) { return 1.0; }) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate_exp([](double s) { return s; }) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // Gamma(3/2) integrand: exercises the adaptive split.
    CHECK(integrate_exp([](double s) { return std::sqrt(2.0 * s); }) ==
          doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-10));
}

TEST_CASE("integrate_exp linearity") {
    CounterRng rng(7, 0);
    for (int rep = 0; rep < 10; ++rep) {
        const double a = 4.0 * rng.uniform() - 2.0;
        const double c1 = rng.uniform() + 0.1;
        const double c2 = 3.0 * rng.uniform();
        auto h1 = [&](double s) { return std::exp(-c1 * s) * std::cos(c2 * s); };
        auto h2 = [&](double s) { return 1.0 / (1.0 + c2 * s); };
        const double lhs = integrate_exp([&](double s) { return a * h1(s) + h2(s); });
        const double rhs = a * integrate_exp(h1) + integrate_exp(h2);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("doubling the order moves the production integrands by < 1e-8") {
    auto run = [](auto h) {
        IntegrateOptions doubled;
        doubled.order = 128;
        doubled.cross_order = 256;
        const double a = integrate_exp(h);
        const double b = integrate_exp(h, doubled);
        return std::abs(a - b) / std::max(1.0, std::abs(b));
    };
    CHECK(run([](double s) {
              const double q = std::sqrt(2.0 * s);
              return q * std::tanh(0.95 * q);
          }) < 1e-8);
    CHECK(run([](double s) {
              const double q = std::sqrt(2.0 * s);
              return std::cosh(0.5 * q) / std::cosh(q);
          }) < 1e-8);
    CHECK(run([](double s) { return std::sqrt(0.25 + 2.0 * s) + 0.5; }) < 1e-8);
    CHECK(run([](double s) { return std::pow(0.5, std::sqrt(2.0 * s)); }) < 1e-8);
}

TEST_CASE("integrate_exp propagates evaluation errors with the node") {
    CHECK_THROWS_AS(integrate_exp([](double s) {
                        return s > 1.0 ? std::numeric_limits<double>::quiet_NaN()
                                       : 1.0;
                    }),
                    EvaluationError);
}

TEST_CASE("find_root basics") {
    CHECK(find_root([](double x) { return x - 2.0; }, 0, 5) ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(find_root([](double x) { return x * x - 2.0; }, 1, 2) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1, 1),
                    BracketError);
}

TEST_CASE("find_root is invariant to bracket widening") {
    auto g = [](double x) { return std::cos(x) - x; };
    const double r1 = find_root(g, 0, 1);
    const double r2 = find_root(g, -2, 5);
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-9));
}

TEST_CASE("bessel defining equation root matches the frozen oracle constant") {
    auto lhs = [](double a) {
        return a * integrate_exp([&](double s) {
            const double q = std::sqrt(2.0 * s);
            return q * std::tanh(a * q);
        }) - 1.0;
    };
    const double root = find_root(lhs, 0.5, 2.0, {1e-12, 200});
    CHECK(root == doctest::Approx(kAStarBeta1).epsilon(1e-8));
}

TEST_CASE("counter rng streams are reproducible and distinct") {
    CounterRng a(42, 3), b(42, 3), c(42, 4);
    for (int i = 0; i < 16; ++i) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        CHECK(va != c.next_u64());
    }
    CounterRng d(1, 0);
    double mean = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) mean += d.normal();
    mean /= n;
    CHECK(std::abs(mean) < 0.03);
}
