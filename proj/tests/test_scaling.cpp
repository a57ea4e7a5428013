#include "ness/errors.hpp"
#include "ness/scaling.hpp"

#include <doctest.h>

#include <cmath>

using namespace ness;

namespace {

ModelFamily xy_family() {
    ModelFamily f;
    f.kind = ModelKind::xy_boundary;
    f.xy = {0, 0.0, 0.0, 0.3, 0.5, 0.1, 0.5};
    return f;
}

SizeFits synthetic(double gap_exp, double g_exp, double ghh_exp, double ggg_exp) {
    const std::vector<double> ns{20, 32, 48, 64, 88, 120};
    const auto series = [&](double e) {
        std::vector<double> v;
        for (double n : ns) v.push_back(std::pow(n, e));
        return fit_powerlaw(ns, v);
    };
    return {series(gap_exp), series(g_exp), series(ghh_exp), series(ggg_exp)};
}

}  // namespace

TEST_CASE("power-law fits recover exact exponents") {
    const std::vector<double> ns{20, 32, 48, 64, 88, 120};
    std::vector<double> cube, linear;
    for (double n : ns) {
        cube.push_back(n * n * n);
        linear.push_back(7.5 * n);
    }
    const ScalingFit a = fit_powerlaw(ns, cube);
    CHECK(std::abs(a.exponent - 3.0) < 1e-12);
    CHECK(a.r_squared == doctest::Approx(1.0));
    CHECK(a.quality == FitQuality::good);
    const ScalingFit b = fit_powerlaw(ns, linear);
    CHECK(std::abs(b.exponent - 1.0) < 1e-12);
    CHECK(std::exp(b.intercept) == doctest::Approx(7.5));
}

TEST_CASE("fit quality thresholds") {
    const std::vector<double> ns{10, 20, 40, 80, 160};
    const ScalingFit noisy = fit_powerlaw(ns, {1.0, 3.0, 2.0, 9.0, 5.0});
    CHECK(noisy.quality == FitQuality::bad);
    CHECK(std::string(to_string(FitQuality::average)) == "average");
}

TEST_CASE("fit preconditions") {
    CHECK_THROWS_AS(fit_powerlaw({1, 2, 3}, {1, 2, 3}), Error);
    CHECK_THROWS_AS(fit_powerlaw({1, 2, 3, 4}, {1, 0, 3, 4}), Error);
    CHECK_THROWS_AS(fit_powerlaw({1, 3, 2, 4}, {1, 2, 3, 4}), Error);
}

TEST_CASE("classification against the scaling table") {
    CHECK(classify_phase(synthetic(-3.1, 2.9, 2.9, 2.9), 0.3, 0.6).row == "Long-range");
    const PhaseReport srmc = classify_phase(synthetic(-3.0, 1.05, 1.0, 1.0), 1.5, 0.6);
    CHECK(srmc.row == "Short-range");
    CHECK(srmc.agrees);
    const PhaseReport h0 = classify_phase(synthetic(-3.0, 6.0, 6.0, 1.0), 0.0, 0.6);
    CHECK(h0.row == "Critical (*) h = 0");
    CHECK(h0.g_series == "g_hh");
    CHECK(h0.agrees);
    CHECK(classify_phase(synthetic(-3.0, 2.0, 0.0, 2.0), 0.3, 0.0).row == "Critical (*) gamma = 0");
    const PhaseReport crit = classify_phase(synthetic(-3.0, 2.3, 2.0, 2.5), 0.75, 0.5);
    CHECK(crit.row == "Critical");
    CHECK_FALSE(crit.agrees);
    CHECK(crit.notes.size() == 2);
}

TEST_CASE("a 1x1 grid equals a direct evaluation") {
    GridSpec grid;
    grid.h_min = grid.h_max = 0.4;
    grid.gamma_min = grid.gamma_max = 0.6;
    const auto rows = sweep_grid(xy_family(), grid, 10, 2);
    REQUIRE(rows.size() == 1);
    const PhasePoint direct = evaluate_point(xy_family(), 0.4, 0.6, 10);
    CHECK(rows[0].g_max == direct.g_max);
    CHECK(rows[0].delta == direct.delta);
    CHECK(rows[0].purity == direct.purity);
}

TEST_CASE("grid sweeps are ordered and independent of the worker count") {
    GridSpec grid{0.2, 1.2, 3, 0.3, 0.6, 2};
    const auto one = sweep_grid(xy_family(), grid, 10, 1);
    const auto many = sweep_grid(xy_family(), grid, 10, 4);
    REQUIRE(one.size() == 6);
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].h == many[i].h);
        CHECK(one[i].gamma == many[i].gamma);
        CHECK(one[i].g_max == many[i].g_max);
        CHECK(one[i].g_max >= std::max(one[i].g_hh, one[i].g_gg) - 1e-9);
    }
    CHECK(one[0].h == 0.2);
    CHECK(one[1].gamma == 0.6);
    CHECK(one[2].h == doctest::Approx(0.7));
}

TEST_CASE("failures are carried per point") {
    ModelFamily f = xy_family();
    f.xy.gl_plus = f.xy.gl_minus = f.xy.gr_plus = f.xy.gr_minus = 0.0;
    GridSpec grid{0.2, 0.4, 2, 0.5, 0.5, 1};
    const auto rows = sweep_grid(f, grid, 6, 1);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK_FALSE(r.ok());
        CHECK(r.status == "non_unique_steady_state");
    }
    CHECK_THROWS_AS(fit_sizes(rows), Error);
    CHECK_THROWS_AS((GridSpec{0.0, 1.0, 1, 0.0, 1.0, 2}.validate()), Error);
}

TEST_CASE("SRMC |g|/n stays bounded while LRMC grows") {
    const std::vector<int> ns{20, 32, 48, 64, 88, 120};
    const auto srmc = sweep_sizes(xy_family(), 1.5, 0.6, ns, 1);
    const auto lrmc = sweep_sizes(xy_family(), 0.3, 0.6, ns, 1);
    double lo = 1e300, hi = 0;
    for (const auto& p : srmc) {
        lo = std::min(lo, p.g_max / p.n);
        hi = std::max(hi, p.g_max / p.n);
    }
    CHECK(hi / lo < 2.0);
    const double ratio = (lrmc.back().g_max / lrmc.back().n) / (lrmc.front().g_max / lrmc.front().n);
    CHECK(ratio > 5.0);
}
