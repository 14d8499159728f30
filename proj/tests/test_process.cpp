#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <limits>

#include "equistop/process.hpp"
#include "equistop/quadrature.hpp"

using namespace equistop;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("nu") {
    CHECK(DiffusionModel::gbm(0, 1).nu() == doctest::Approx(-0.5));
    CHECK(DiffusionModel::gbm(0.5, 1).nu() == doctest::Approx(0.0));
    CHECK(DiffusionModel::gbm(1, 1).nu() == doctest::Approx(0.5));
    CHECK_THROWS_AS(DiffusionModel::reflected_bm().nu(), std::invalid_argument);
}

TEST_CASE("one-sided transforms") {
    const auto gbm = DiffusionModel::gbm(0, 1);  // nu = -1/2
    CHECK(laplace_hit_one_sided(gbm, 2.0, 2.0, 1.0) == 1.0);
    // Up-crossing exponent sqrt(1/4 + 2) + 1/2 = 2, so (1/2)^2.
    CHECK(laplace_hit_one_sided(gbm, 1.0, 2.0, 1.0) ==
          doctest::Approx(0.25).epsilon(1e-12));
    const auto rbm = DiffusionModel::reflected_bm();
    CHECK(laplace_hit_one_sided(rbm, 0.0, 1.0, 0.5) ==
          doctest::Approx(1.0 / std::cosh(1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(laplace_hit_one_sided(gbm, 1.0, -2.0, 1.0), std::domain_error);
}

TEST_CASE("one-sided transform is strictly decreasing in lambda") {
    const auto gbm = DiffusionModel::gbm(0.2, 0.7);
    const auto rbm = DiffusionModel::reflected_bm();
    double prev_g = 1.0, prev_r = 1.0;
    for (double lam : {0.1, 0.3, 1.0, 3.0, 10.0}) {
        const double vg = laplace_hit_one_sided(gbm, 1.0, 2.0, lam);
        const double vr = laplace_hit_one_sided(rbm, 0.5, 1.5, lam);
        CHECK(vg < prev_g);
        CHECK(vr < prev_r);
        CHECK(vg > 0);
        CHECK(vr > 0);
        prev_g = vg;
        prev_r = vr;
    }
}

TEST_CASE("two-sided exit weights") {
    const auto gbm = DiffusionModel::gbm(0, 1);  // nu = -1/2
    // gamma = 3/2 at lambda = 1 makes the weights exactly 4/9 and 2/9.
    const auto [ll, lr] = laplace_exit_two_sided(gbm, 2.0, 1.0, 4.0, 1.0);
    CHECK(ll == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
    CHECK(lr == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
    CHECK(ll + lr < 1.0);

    // y -> l gives (1, 0).
    const auto [al, ar] = laplace_exit_two_sided(gbm, 1.0 + 1e-12, 1.0, 4.0, 1.0);
    CHECK(al == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ar == doctest::Approx(0.0).epsilon(1e-9));

    // nu = 0 and y at the geometric midpoint: equal weights.
    const auto driftless = DiffusionModel::gbm(0.5, 1.0);
    const auto [ml, mr] = laplace_exit_two_sided(driftless, 2.0, 1.0, 4.0, 0.7);
    CHECK(ml == doctest::Approx(mr).epsilon(1e-12));

    CHECK_THROWS_AS(laplace_exit_two_sided(gbm, 5.0, 1.0, 4.0, 1.0),
                    std::domain_error);
}

TEST_CASE("two-sided exit is invariant under state scaling") {
    const auto gbm = DiffusionModel::gbm(0.1, 0.8);
    const auto base = laplace_exit_two_sided(gbm, 2.0, 1.0, 5.0, 1.3);
    for (double alpha : {0.25, 3.0, 40.0}) {
        const auto scaled =
            laplace_exit_two_sided(gbm, 2.0 * alpha, alpha, 5.0 * alpha, 1.3);
        CHECK(scaled.first == doctest::Approx(base.first).epsilon(1e-10));
        CHECK(scaled.second == doctest::Approx(base.second).epsilon(1e-10));
    }
}

TEST_CASE("two-sided exit weights stay in [0,1] and sum below one") {
    CounterRng rng(21, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const double mu = 2.0 * rng.uniform() - 1.0;
        const double sigma = 0.3 + rng.uniform();
        const double l = 0.2 + rng.uniform();
        const double r = l + 0.2 + 3.0 * rng.uniform();
        const double y = l + (r - l) * (0.05 + 0.9 * rng.uniform());
        const double lam = 0.05 + 4.0 * rng.uniform();
        const auto [ll, lr] =
            laplace_exit_two_sided(DiffusionModel::gbm(mu, sigma), y, l, r, lam);
        CHECK(ll >= 0);
        CHECK(lr >= 0);
        CHECK(ll <= 1.0);
        CHECK(lr <= 1.0);
        CHECK(ll + lr <= 1.0 + 1e-12);
    }
}

TEST_CASE("reflected two-sided exit allows absorption at zero") {
    const auto rbm = DiffusionModel::reflected_bm();
    // Exit of (0, r): hitting 0 is W hitting 0, so the plain Brownian exit
    // transform applies with l = 0.
    const double q = std::sqrt(2.0 * 0.7);
    const auto [l0, lr] = laplace_exit_two_sided(rbm, 0.4, 0.0, 1.0, 0.7);
    CHECK(l0 == doctest::Approx(std::sinh(q * 0.6) / std::sinh(q)).epsilon(1e-12));
    CHECK(lr == doctest::Approx(std::sinh(q * 0.4) / std::sinh(q)).epsilon(1e-12));
}

TEST_CASE("exponent identity g(g + 2 nu) = 2 beta s / sigma^2 at quadrature nodes") {
    const double beta = 1.7, sigma = 0.9;
    for (double nu : {-0.5, -0.2, 0.0, 0.4}) {
        for (double s : QuadratureRule::laguerre(64).nodes()) {
            const double g = std::sqrt(nu * nu + 2.0 * beta * s / (sigma * sigma)) - nu;
            CHECK(g * (g + 2.0 * nu) ==
                  doctest::Approx(2.0 * beta * s / (sigma * sigma))
                      .epsilon(1e-9));
        }
    }
}

TEST_CASE("sample_first_hit immediate cases") {
    const auto rbm = DiffusionModel::reflected_bm();
    CounterRng rng(1, 0);
    SimOptions opts;
    opts.horizon = 10.0;
    const auto region = RegionSet::interval(1.0, kInf);
    const auto hit = sample_first_hit(rbm, 2.0, region, opts, rng);
    REQUIRE(hit.has_value());
    CHECK(hit->time == 0.0);
    CHECK(hit->state == 2.0);

    const auto whole = RegionSet::all();
    const auto hit2 = sample_first_hit(rbm, 0.3, whole, opts, rng);
    REQUIRE(hit2.has_value());
    CHECK(hit2->time == 0.0);
}

TEST_CASE("empty region is never hit") {
    const auto gbm = DiffusionModel::gbm(0, 1);  // nu <= 0
    SimOptions opts;
    opts.horizon = 5.0;
    for (int i = 0; i < 20; ++i) {
        CounterRng rng(2, i);
        CHECK_FALSE(sample_first_hit(gbm, 1.0, RegionSet::empty(), opts, rng));
    }
}

TEST_CASE("first-hit Laplace transform matches the closed form (reflected)") {
    const auto rbm = DiffusionModel::reflected_bm();
    const auto region = RegionSet::interval(1.0, kInf);
    const double lambda = 0.5;
    SimOptions opts;
    opts.horizon = 200.0;
    const int n = 20000;
    double sum = 0, ss = 0;
    for (int i = 0; i < n; ++i) {
        CounterRng rng(77, i);
        const auto hit = sample_first_hit(rbm, 0.0, region, opts, rng);
        const double v = hit ? std::exp(-lambda * hit->time) : 0.0;
        sum += v;
        ss += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((ss / n - mean * mean) / (n - 1));
    const double exact = 1.0 / std::cosh(1.0);
    CHECK(std::abs(mean - exact) < 3.5 * se);
}

TEST_CASE("two-sided exit matches Monte Carlo (GBM)") {
    const auto gbm = DiffusionModel::gbm(0, 1);
    const auto region = RegionSet::from_intervals({{0.0, 1.0}, {4.0, kInf}});
    const double lambda = 1.0;
    SimOptions opts;
    opts.horizon = 400.0;
    const int n = 20000;
    double sum_l = 0, sum_r = 0, ss_l = 0, ss_r = 0;
    for (int i = 0; i < n; ++i) {
        CounterRng rng(91, i);
        const auto hit = sample_first_hit(gbm, 2.0, region, opts, rng);
        REQUIRE(hit.has_value());  // nu < 0: exits almost surely
        const double w = std::exp(-lambda * hit->time);
        const bool low = hit->state < 2.0;
        sum_l += low ? w : 0.0;
        sum_r += low ? 0.0 : w;
        ss_l += low ? w * w : 0.0;
        ss_r += low ? 0.0 : w * w;
    }
    const double ml = sum_l / n, mr = sum_r / n;
    const double sel = std::sqrt((ss_l / n - ml * ml) / (n - 1));
    const double ser = std::sqrt((ss_r / n - mr * mr) / (n - 1));
    CHECK(std::abs(ml - 4.0 / 9.0) < 3.5 * sel);
    CHECK(std::abs(mr - 2.0 / 9.0) < 3.5 * ser);
}

TEST_CASE("running maximum exceeds the start immediately (diffusive condition)") {
    for (const auto& model :
         {DiffusionModel::reflected_bm(), DiffusionModel::gbm(0.1, 0.6)}) {
        int exceed = 0;
        const int n = 2000;
        for (int i = 0; i < n; ++i) {
            CounterRng rng(5, i);
            const double x0 = model.kind == ModelKind::Gbm ? 1.0 : 0.7;
            const auto path = simulate_path(model, x0, 0.01, 1e-3, rng);
            const double natural_start =
                model.kind == ModelKind::Gbm ? std::log(x0) : x0;
            if (path.bridge_max > natural_start) ++exceed;
        }
        CHECK(exceed == n);
    }
}

TEST_CASE("regularity: tight targets are hit with positive frequency") {
    const auto rbm = DiffusionModel::reflected_bm();
    const auto target = RegionSet::interval(2.0, 2.001);
    SimOptions opts;
    opts.horizon = 50.0;
    int hits = 0;
    for (int i = 0; i < 200; ++i) {
        CounterRng rng(13, i);
        if (sample_first_hit(rbm, 0.5, target, opts, rng)) ++hits;
    }
    CHECK(hits > 100);
}
