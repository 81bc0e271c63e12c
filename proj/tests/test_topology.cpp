#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "spinres/topology.hpp"
#include "support.hpp"

using namespace spinres;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams alpha_scan_params(double alpha) { return {1.0, 1.0, alpha, -1.0, std::nullopt}; }

ModelParams lambda_scan_params(double lambda) { return {1.0, lambda, 1.5, 1.0, std::nullopt}; }

}  // namespace

TEST_CASE("winding of the pure anisotropic chains") {
    const WindingResult plus = winding_number(ModelParams{1.0, 0.0, 0.0, 0.0, std::nullopt});
    CHECK(plus.n == 1);
    CHECK(plus.closure_defect <= 1e-6);

    const WindingResult minus = winding_number(ModelParams{-1.0, 0.0, 0.0, 0.0, std::nullopt});
    CHECK(minus.n == -1);
    CHECK(minus.closure_defect <= 1e-6);
}

TEST_CASE("winding sectors across the three-spin interaction scan") {
    // regions bounded by alpha_c = (-sqrt5-1)/2, 0, (sqrt5-1)/2, 2; the two
    // outer loops are antipodal images of each other and wind the same way
    const std::vector<std::pair<double, int>> expected = {
        {-2.3, -2}, {-0.8, 0}, {0.3, 1}, {1.2, -1}, {2.3, -2}};
    for (const auto& [alpha, n] : expected) {
        const WindingResult w = winding_number(alpha_scan_params(alpha));
        CHECK(w.n == n);
        CHECK(w.closure_defect <= 1e-6);
    }
}

TEST_CASE("winding sectors across the field scan") {
    const std::vector<std::pair<double, int>> expected = {
        {-2.5, 0}, {-0.5, 2}, {1.5, 1}, {2.8, 0}};
    for (const auto& [lambda, n] : expected) {
        const WindingResult w = winding_number(lambda_scan_params(lambda));
        CHECK(w.n == n);
        CHECK(w.closure_defect <= 1e-6);
    }
}

TEST_CASE("gapless parameters are rejected") {
    CHECK_THROWS_AS(winding_number(ModelParams{1.0, 1.0, 0.0, 0.0, std::nullopt}),
                    CriticalParametersError);
}

TEST_CASE("wrapped-angle accumulation agrees with the loop integral") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    int checked = 0;
    while (checked < 30) {
        const ModelParams p{uni(rng), uni(rng), uni(rng), uni(rng), std::nullopt};
        if (gap_minimum(p).gap < 5e-2) continue;
        ++checked;
        const WindingResult w = winding_number(p, 8192);
        const double integral = winding_integral(p, 8192);
        CHECK(std::abs(w.raw - integral) <= 1e-6);
        CHECK(static_cast<int>(std::lround(integral)) == w.n);
    }
}

TEST_CASE("winding integrality and step-doubling stability") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    int checked = 0;
    while (checked < 100) {
        const ModelParams p{uni(rng), uni(rng), uni(rng), uni(rng), std::nullopt};
        if (gap_minimum(p).gap < 1e-2) continue;
        ++checked;
        const WindingResult w = winding_number(p, 4096);
        CHECK(w.closure_defect <= 1e-6);
        CHECK(winding_number(p, 8192).n == w.n);
    }
}

TEST_CASE("gap minimum locations") {
    const GapMinimum ising = gap_minimum(ModelParams{1.0, 1.0, 0.0, 0.0, std::nullopt});
    CHECK(ising.gap <= 1e-10);
    CHECK(std::abs(ising.phi_star) <= 1e-4);

    CHECK(gap_minimum(alpha_scan_params(2.0)).gap <= 1e-9);
    CHECK(gap_minimum(alpha_scan_params(1.0)).gap > 0.1);
}

TEST_CASE("critical scan recovers the three-spin critical points") {
    const auto roots =
        critical_scan(alpha_scan_params(0.0), ScanAxis::Alpha, -2.5, 2.5, 101);
    REQUIRE(roots.size() == 4);
    CHECK(roots[0] == doctest::Approx((-std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-6));
    CHECK(roots[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
    CHECK(roots[2] == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-6));
    CHECK(roots[3] == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("critical scan recovers the field-driven critical points") {
    const auto roots =
        critical_scan(lambda_scan_params(0.0), ScanAxis::Lambda, -3.0, 3.0, 101);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == doctest::Approx(-1.5).epsilon(1e-6));
    CHECK(roots[1] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(roots[2] == doctest::Approx(2.5).epsilon(1e-6));
}

TEST_CASE("critical scan finds the gapless-region boundary of the XXT chain") {
    const ModelParams p{0.0, 0.0, 0.5, 0.0, std::nullopt};
    const auto roots = critical_scan(p, ScanAxis::Lambda, 0.0, 3.0, 121);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("winding stays constant between consecutive critical points") {
    const auto roots =
        critical_scan(alpha_scan_params(0.0), ScanAxis::Alpha, -2.5, 2.5, 101);
    std::vector<double> edges{-2.5};
    edges.insert(edges.end(), roots.begin(), roots.end());
    edges.push_back(2.5);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i], b = edges[i + 1];
        const int n_mid = winding_number(alpha_scan_params(0.5 * (a + b))).n;
        for (double frac : {0.15, 0.4, 0.85}) {
            const double x = a + frac * (b - a);
            CHECK(winding_number(alpha_scan_params(x)).n == n_mid);
        }
    }
}

TEST_CASE("adjacent-site coherence derivative peaks at the critical points") {
    const auto table =
        coherence_derivative_scan(alpha_scan_params(0.0), ScanAxis::Alpha, -2.5, 2.5, 201);
    REQUIRE(table.size() == 201);
    const double h = 5.0 / 200.0;
    const double alpha_c[4] = {(-std::sqrt(5.0) - 1.0) / 2.0, 0.0, (std::sqrt(5.0) - 1.0) / 2.0,
                               2.0};
    for (double ac : alpha_c) {
        // |derivative| near the critical point dominates the scan background
        double near = 0.0, far_max = 0.0;
        for (const auto& row : table) {
            const double d = std::abs(row.derivative);
            if (std::abs(row.value - ac) <= 2.0 * h) near = std::max(near, d);
        }
        for (const auto& row : table) {
            bool interior = true;
            for (double other : alpha_c)
                if (std::abs(row.value - other) <= 6.0 * h) interior = false;
            if (interior) far_max = std::max(far_max, std::abs(row.derivative));
        }
        CHECK(near > far_max);
    }
}

TEST_CASE("no divergence is flagged inside a single phase") {
    const auto table =
        coherence_derivative_scan(alpha_scan_params(0.0), ScanAxis::Alpha, 0.8, 1.8, 41);
    for (const auto& row : table) CHECK_FALSE(row.divergent);
}
