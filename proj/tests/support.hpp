#pragma once

// Test-side reference implementations, independent of the library paths they
// cross-check: generic 4x4 resource measures, bisection root finding, and a
// random X-state generator.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "spinres/rdm.hpp"

namespace testsupport {

inline constexpr double kPi = std::numbers::pi;

template <class F>
double bisect_root(const F& f, double a, double b, int iters = 200) {
    double fa = f(a);
    for (int i = 0; i < iters; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fa * fm <= 0.0)
            b = m;
        else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

inline double shannon2(const std::vector<double>& p) {
    double s = 0.0;
    for (double x : p)
        if (x > 1e-15) s -= x * std::log2(x);
    return s;
}

inline Eigen::Matrix4cd to_matrix(const spinres::TwoSiteState& s) {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(0, 0) = s.u_plus;
    rho(1, 1) = s.z_diag;
    rho(2, 2) = s.z_diag;
    rho(3, 3) = s.u_minus;
    rho(1, 2) = rho(2, 1) = s.y_plus;
    rho(0, 3) = rho(3, 0) = s.y_minus;
    return rho;
}

// l1-norm coherence straight off the matrix.
inline double coherence_of_matrix(const Eigen::Matrix4cd& rho) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) s += std::abs(rho(i, j));
    return s;
}

// Wootters concurrence of an arbitrary two-qubit density matrix.
inline double concurrence_of_matrix(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;  // sigma_y x sigma_y
    const Eigen::Matrix4cd r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(r);
    std::vector<double> lam;
    for (int i = 0; i < 4; ++i) lam.push_back(std::sqrt(std::max(0.0, es.eigenvalues()[i].real())));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

inline std::vector<double> eigenvalues_of(const Eigen::Matrix4cd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    std::vector<double> out;
    for (int i = 0; i < 4; ++i) out.push_back(std::max(0.0, es.eigenvalues()[i]));
    return out;
}

// Conditional entropy after a projective measurement along (theta, phi) on the
// first qubit, evaluated directly on the 4x4 matrix.
inline double conditional_entropy_of_matrix(const Eigen::Matrix4cd& rho, double theta,
                                            double phi) {
    using C = std::complex<double>;
    const C e{std::cos(phi), std::sin(phi)};
    Eigen::Vector2cd v0, v1;
    v0 << std::cos(theta / 2.0), e * std::sin(theta / 2.0);
    v1 << std::conj(e) * std::sin(theta / 2.0), -std::cos(theta / 2.0);

    double total = 0.0;
    for (const auto& v : {v0, v1}) {
        const Eigen::Matrix2cd proj = v * v.adjoint();
        Eigen::Matrix2cd b = Eigen::Matrix2cd::Zero();
        for (int a = 0; a < 2; ++a)
            for (int ap = 0; ap < 2; ++ap) b += proj(ap, a) * rho.block<2, 2>(2 * a, 2 * ap);
        const double pk = b.trace().real();
        if (pk < 1e-14) continue;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(b / pk);
        total += pk * shannon2({std::max(0.0, es.eigenvalues()[0]),
                                std::max(0.0, es.eigenvalues()[1])});
    }
    return total;
}

// Reference discord: dense angle grid plus local refinement on the matrix.
inline double discord_of_matrix(const Eigen::Matrix4cd& rho, int n_theta = 181, int n_phi = 91) {
    const Eigen::Matrix2cd rho_a =
        rho.block<2, 2>(0, 0) + rho.block<2, 2>(2, 2);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> esa(rho_a);
    const double sa = shannon2({std::max(0.0, esa.eigenvalues()[0]),
                                std::max(0.0, esa.eigenvalues()[1])});
    const double sab = shannon2(eigenvalues_of(rho));

    double best = 1e300;
    for (int i = 0; i < n_theta; ++i)
        for (int j = 0; j < n_phi; ++j) {
            const double t = kPi * i / (n_theta - 1);
            const double p = kPi * j / (n_phi - 1);
            best = std::min(best, conditional_entropy_of_matrix(rho, t, p));
        }
    return std::max(0.0, sa - sab + best);
}

// Random physical X state: Dirichlet-style diagonal plus admissible
// off-diagonal elements.
inline spinres::TwoSiteState random_x_state(std::mt19937& rng) {
    std::exponential_distribution<double> expo(1.0);
    double w[3] = {expo(rng), expo(rng), expo(rng)};
    const double total = w[0] + w[1] + w[2];
    spinres::TwoSiteState s;
    s.u_plus = w[0] / total;
    s.u_minus = w[1] / total;
    s.z_diag = 0.5 * w[2] / total;
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    s.y_plus = uni(rng) * s.z_diag;
    s.y_minus = uni(rng) * std::sqrt(s.u_plus * s.u_minus);
    s.distance = 1;
    return s;
}

}  // namespace testsupport
