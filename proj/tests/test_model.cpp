#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "spinres/model.hpp"
#include "support.hpp"

using namespace spinres;
using testsupport::bisect_root;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("dispersion closes the gap at the Ising critical point") {
    const ModelParams p{1.0, 1.0, 0.0, 0.0, std::nullopt};
    const Dispersion d = dispersion(p, 0.0);
    CHECK(d.z == 0.0);
    CHECK(d.y == 0.0);
    CHECK(d.energy == 0.0);
}

TEST_CASE("dispersion vanishes at the Fermi momentum of the XXT chain") {
    const ModelParams p{0.0, 0.5, 3.0, 0.0, std::nullopt};
    // independent root of z(phi) on (0, pi/2)
    const double root = bisect_root([&](double x) { return dispersion_z(p, x); }, 0.0, kPi / 2.0);
    CHECK(root == doctest::Approx(0.8162447332564471).epsilon(1e-10));
    CHECK(dispersion(p, root).energy < 1e-10);
}

TEST_CASE("dispersion evaluates the stated closed form") {
    const ModelParams p{1.0, 1.0, 2.0, -1.0, std::nullopt};
    const Dispersion d = dispersion(p, 0.0);
    CHECK(d.z == doctest::Approx(-2.0));
    CHECK(d.y == doctest::Approx(0.0));
    CHECK(d.energy == doctest::Approx(2.0));
}

TEST_CASE("mode_grid produces the odd-L momentum grid") {
    ModelParams p{1.0, 0.0, 0.0, 0.0, 3};
    auto modes = mode_grid(p);
    REQUIRE(modes.size() == 3);
    CHECK(modes[0].phi == doctest::Approx(-2.0 * kPi / 3.0));
    CHECK(modes[1].phi == doctest::Approx(0.0));
    CHECK(modes[2].phi == doctest::Approx(2.0 * kPi / 3.0));

    p.chain_length = 1001;
    modes = mode_grid(p);
    CHECK(modes.size() == 1001);
    CHECK(std::abs(modes.back().phi) == doctest::Approx(2.0 * kPi * 500.0 / 1001.0));
    CHECK(std::abs(modes.back().phi) < kPi);

    p.chain_length = 5;
    p.lambda = 0.0;
    modes = mode_grid(p);
    CHECK(modes[2].phi == doctest::Approx(0.0));
    CHECK(modes[2].z == doctest::Approx(-1.0));
    CHECK(modes[2].energy == doctest::Approx(1.0));
}

TEST_CASE("mode_grid rejects missing or even chain lengths") {
    ModelParams p{};
    CHECK_THROWS_AS(mode_grid(p), ConfigError);
    p.chain_length = 10;
    CHECK_THROWS_AS(mode_grid(p), ConfigError);
    p.chain_length = 1;
    CHECK_THROWS_AS(mode_grid(p), ConfigError);
}

TEST_CASE("bogoliubov_angle keeps both quadrature components consistent") {
    CHECK(bogoliubov_angle(1.0, 0.0) == doctest::Approx(0.0));
    CHECK(bogoliubov_angle(0.0, 1.0) == doctest::Approx(-kPi / 2.0));
    CHECK(bogoliubov_angle(-1.0, 0.0) == doctest::Approx(kPi));
    CHECK_THROWS_AS(bogoliubov_angle(0.0, 0.0), CriticalParametersError);

    std::mt19937 rng(42);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double z = uni(rng), y = uni(rng);
        const double e = std::hypot(z, y);
        if (e < 1e-6) continue;
        const double theta = bogoliubov_angle(z, y);
        CHECK(std::sin(theta) == doctest::Approx(-y / e).epsilon(1e-12));
        CHECK(std::cos(theta) == doctest::Approx(z / e).epsilon(1e-12));
    }
}

TEST_CASE("dispersion parity and energy positivity on random parameters") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const ModelParams p{uni(rng), uni(rng), uni(rng), uni(rng), std::nullopt};
        const double phi = uni(rng);
        const Dispersion plus = dispersion(p, phi);
        const Dispersion minus = dispersion(p, -phi);
        CHECK(plus.z == doctest::Approx(minus.z).epsilon(1e-12));
        CHECK(plus.y == doctest::Approx(-minus.y).epsilon(1e-12));
        CHECK(plus.energy == doctest::Approx(minus.energy).epsilon(1e-12));
        CHECK(plus.energy >= 0.0);
    }
}

TEST_CASE("mode grid satisfies discrete orthogonality") {
    const ModelParams p{0.3, 0.7, 0.2, 0.1, 101};
    const auto modes = mode_grid(p);
    for (int r = 1; r < 101; r += 17) {
        double sum = 0.0;
        for (const auto& m : modes) sum += std::cos(m.phi * r);
        CHECK(std::abs(sum) < 1e-10);
    }
}
