#include <doctest.h>

#include <cmath>
#include <random>

#include "qcalab/errors.hpp"
#include "qcalab/fits.hpp"

using namespace qcalab;

TEST_CASE("exact log-linear data recovers the rate to machine precision") {
    std::vector<std::pair<double, double>> pts;
    for (double m : {10.0, 20.0, 30.0}) pts.emplace_back(m, std::exp(-2.0 * m + 0.7));
    const FitResult r = fit_exp_decay(pts);
    CHECK(r.parameters[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.parameters[1] == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(r.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.residual_max < 1e-12);
}

TEST_CASE("decay fit rejects nonpositive values and short inputs") {
    CHECK_THROWS_AS(fit_exp_decay({{1.0, 1.0}, {2.0, 0.5}}), ValidationError);
    CHECK_THROWS_AS(fit_exp_decay({{1.0, 1.0}, {2.0, 0.0}, {3.0, 0.1}}), NonPositiveValueError);
    CHECK_THROWS_AS(fit_exp_decay({{1.0, 1.0}, {2.0, -0.5}, {3.0, 0.1}}), NonPositiveValueError);
}

TEST_CASE("one percent multiplicative noise moves the rate by under 0.02") {
    std::mt19937 seed_gen(12345);
    for (int trial = 0; trial < 100; ++trial) {
        std::mt19937 rng(seed_gen());
        std::normal_distribution<double> noise(0.0, 0.01);
        std::vector<std::pair<double, double>> pts;
        for (double m = 10.0; m <= 40.0; m += 2.0)
            pts.emplace_back(m, std::exp(-1.4 * m) * (1.0 + noise(rng)));
        const FitResult r = fit_exp_decay(pts);
        CHECK(std::abs(r.parameters[0] - 1.4) < 0.02);
    }
}

TEST_CASE("exact gaussian samples fit perfectly") {
    std::vector<double> v;
    for (int j = 0; j < 41; ++j) v.push_back(2.5 * std::exp(-0.5 * (j - 17.3) * (j - 17.3) / 16.0));
    const FitResult r = fit_gaussian(v);
    CHECK(r.parameters[0] == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(r.parameters[1] == doctest::Approx(17.3).epsilon(1e-10));
    CHECK(r.parameters[2] == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(r.r_squared >= 1.0 - 1e-10);
}

TEST_CASE("gaussian fit works on absolute values (sign freedom)") {
    std::vector<double> v;
    for (int j = 0; j < 31; ++j) v.push_back(-1.7 * std::exp(-0.5 * (j - 15.0) * (j - 15.0) / 9.0));
    const FitResult r = fit_gaussian(v);
    CHECK(r.parameters[0] == doctest::Approx(1.7).epsilon(1e-9));
    CHECK(r.r_squared >= 1.0 - 1e-10);
}

TEST_CASE("gaussian residuals are invariant under overall scaling") {
    std::mt19937 rng(77);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::vector<double> v;
    for (int j = 0; j < 25; ++j)
        v.push_back(std::exp(-0.5 * (j - 12.0) * (j - 12.0) / 6.0) + 0.01 * noise(rng));
    const FitResult r1 = fit_gaussian(v);
    std::vector<double> scaled = v;
    for (double& x : scaled) x *= 37.0;
    const FitResult r2 = fit_gaussian(scaled);
    CHECK(r1.r_squared == doctest::Approx(r2.r_squared).epsilon(1e-9));
    CHECK(r2.parameters[1] == doctest::Approx(r1.parameters[1]).epsilon(1e-6));
}

TEST_CASE("reversing the samples reflects the center") {
    std::vector<double> v;
    for (int j = 0; j < 30; ++j) v.push_back(std::exp(-0.5 * (j - 11.0) * (j - 11.0) / 4.0));
    const FitResult fwd = fit_gaussian(v);
    std::vector<double> rev(v.rbegin(), v.rend());
    const FitResult bwd = fit_gaussian(rev);
    CHECK(fwd.r_squared == doctest::Approx(bwd.r_squared).epsilon(1e-9));
    CHECK(fwd.parameters[1] + bwd.parameters[1] == doctest::Approx(29.0).epsilon(1e-6));
}

TEST_CASE("degenerate inputs are refused") {
    CHECK_THROWS_AS(fit_gaussian({1.0, 1.0, 1.0, 1.0, 1.0}), DegenerateDataError);
    CHECK_THROWS_AS(fit_gaussian({1.0, 2.0}), ValidationError);
    // convex (valley) data has no log-domain gaussian
    std::vector<double> valley;
    for (int j = 0; j < 20; ++j) valley.push_back(std::cosh(0.3 * (j - 10.0)));
    CHECK_THROWS_AS(fit_gaussian(valley), DegenerateDataError);
}
