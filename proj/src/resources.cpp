#include "spinres/resources.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spinres {

namespace {

constexpr double kPi = std::numbers::pi;

double plog2p(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

double binary_entropy(double p) { return -plog2p(p) - plog2p(1.0 - p); }

// Entropy of a spectrum produced by internal closed forms. Noise eigenvalues
// within the state positivity tolerance are clipped; anything more negative
// indicates a corrupted state.
double spectrum_entropy(std::span<const double> eigs) {
    double s = 0.0;
    for (double p : eigs) {
        if (p < -1e-8)
            throw InternalConsistencyError("spectrum_entropy: eigenvalue " + std::to_string(p));
        s -= plog2p(std::min(p, 1.0));
    }
    return s;
}

double entropy_of_subsystem_a(const TwoSiteState& s) {
    const double p = std::clamp(s.u_plus + s.z_diag, 0.0, 1.0);
    return binary_entropy(p);
}

// |Bloch vector| of the conditioned single-qubit state, clamped to [0, 1].
double conditioned_bloch_norm(double bx, double by, double bz, double p) {
    const double norm = std::sqrt(bx * bx + by * by + bz * bz) / (2.0 * p);
    return std::min(norm, 1.0);
}

}  // namespace

const char* to_string(MeasurementKind k) {
    switch (k) {
        case MeasurementKind::FamilyI: return "sigma_y(I)";
        case MeasurementKind::FamilyII: return "sigma_x(II)";
        case MeasurementKind::FamilyIII: return "sigma_z(III)";
        case MeasurementKind::Grid: return "grid";
    }
    return "?";
}

double coherence_l1(const TwoSiteState& state) {
    return 2.0 * (std::abs(state.y_plus) + std::abs(state.y_minus));
}

double concurrence(const TwoSiteState& state) {
    const double uu = std::max(state.u_plus * state.u_minus, 0.0);
    const double branch_plus = 2.0 * (std::abs(state.y_plus) - std::sqrt(uu));
    const double branch_minus = 2.0 * (std::abs(state.y_minus) - state.z_diag);
    return std::max({0.0, branch_plus, branch_minus});
}

double entropy(std::span<const double> eigs) {
    double sum = 0.0;
    for (double p : eigs) sum += p;
    if (std::abs(sum - 1.0) > 1e-9)
        throw NormalizationError("entropy: eigenvalues sum to " + std::to_string(sum));
    double s = 0.0;
    for (double p : eigs) {
        if (p < -1e-12)
            throw NumericalError("entropy: eigenvalue below noise floor: " + std::to_string(p));
        s -= plog2p(std::min(p, 1.0));
    }
    return s;
}

std::array<double, 4> x_state_spectrum(const TwoSiteState& s) {
    const double mean = 0.5 * (s.u_plus + s.u_minus);
    const double disc =
        std::sqrt(0.25 * (s.u_plus - s.u_minus) * (s.u_plus - s.u_minus) +
                  s.y_minus * s.y_minus);
    return {s.z_diag + s.y_plus, s.z_diag - s.y_plus, mean + disc, mean - disc};
}

double conditional_entropy(const TwoSiteState& s, MeasurementKind family) {
    const double m = s.mag_z();
    switch (family) {
        case MeasurementKind::FamilyI: {
            const double t = std::min(std::hypot(s.yy(), m), 1.0);
            return binary_entropy(0.5 * (1.0 + t));
        }
        case MeasurementKind::FamilyII: {
            const double t = std::min(std::hypot(s.xx(), m), 1.0);
            return binary_entropy(0.5 * (1.0 + t));
        }
        case MeasurementKind::FamilyIII: {
            const double zzc = s.zz();
            double total = 0.0;
            for (double sign : {+1.0, -1.0}) {
                const double p = 0.5 * (1.0 + sign * m);
                if (p < 1e-15) continue;  // fully polarized branch contributes nothing
                const double xi = (1.0 - zzc) / (4.0 * p);
                const double eta = (1.0 + 2.0 * sign * m + zzc) / (4.0 * p);
                total -= p * (plog2p(std::max(xi, 0.0)) + plog2p(std::max(eta, 0.0)));
            }
            return total;
        }
        case MeasurementKind::Grid:
            throw ConfigError("conditional_entropy: Grid is not a closed-form family");
    }
    return 0.0;
}

double measured_conditional_entropy(const TwoSiteState& s, double theta, double phi) {
    const double nx = std::sin(theta) * std::cos(phi);
    const double ny = std::sin(theta) * std::sin(phi);
    const double nz = std::cos(theta);
    const double m = s.mag_z();
    const double tx = s.xx(), ty = s.yy(), tz = s.zz();

    double total = 0.0;
    for (double sign : {+1.0, -1.0}) {
        const double p = 0.5 * (1.0 + sign * m * nz);
        if (p < 1e-15) continue;
        const double b = conditioned_bloch_norm(sign * tx * nx, sign * ty * ny,
                                                sign * tz * nz + m, p);
        total += p * binary_entropy(0.5 * (1.0 + b));
    }
    return total;
}

namespace {

struct GridMinimum {
    double value;
    double theta;
    double phi;
};

// Golden-section line minimization used by the grid refinement pass.
template <class F>
double golden_min_1d(const F& f, double a, double b, double& best_x) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-9) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    best_x = 0.5 * (a + b);
    return std::min(f1, f2);
}

GridMinimum grid_conditional_minimum(const TwoSiteState& s, int n_theta, int n_phi) {
    if (n_theta < 2 || n_phi < 2)
        throw ConfigError("discord: grid needs at least 2 points per angle");
    // theta on [0, pi], phi on [0, pi]; directions with phi in [pi, 2pi) give
    // the same projector pair. Inclusive endpoints keep the three measurement
    // families on the grid.
    GridMinimum best{1e300, 0.0, 0.0};
    const double dtheta = kPi / (n_theta - 1);
    const double dphi = kPi / (n_phi - 1);
    for (int i = 0; i < n_theta; ++i) {
        const double theta = i * dtheta;
        for (int j = 0; j < n_phi; ++j) {
            const double phi = j * dphi;
            const double v = measured_conditional_entropy(s, theta, phi);
            if (v < best.value) best = {v, theta, phi};
        }
    }
    // one refinement pass around the winning cell
    double theta_ref = best.theta;
    const double vt = golden_min_1d(
        [&](double t) { return measured_conditional_entropy(s, t, best.phi); },
        std::max(0.0, best.theta - dtheta), std::min(kPi, best.theta + dtheta), theta_ref);
    if (vt < best.value) {
        best.value = vt;
        best.theta = theta_ref;
    }
    double phi_ref = best.phi;
    const double vp = golden_min_1d(
        [&](double p) { return measured_conditional_entropy(s, best.theta, p); },
        std::max(0.0, best.phi - dphi), std::min(kPi, best.phi + dphi), phi_ref);
    if (vp < best.value) {
        best.value = vp;
        best.phi = phi_ref;
    }
    return best;
}

Measurement snap_to_family(double theta, double phi) {
    constexpr double tol = 1e-9;
    if (std::abs(theta) < tol || std::abs(theta - kPi) < tol)
        return {MeasurementKind::FamilyIII, 0.0, 0.0};
    if (std::abs(theta - 0.5 * kPi) < tol) {
        if (std::abs(phi) < tol || std::abs(phi - kPi) < tol)
            return {MeasurementKind::FamilyII, 0.5 * kPi, 0.0};
        if (std::abs(phi - 0.5 * kPi) < tol)
            return {MeasurementKind::FamilyI, 0.5 * kPi, 0.5 * kPi};
    }
    return {MeasurementKind::Grid, theta, phi};
}

DiscordResult assemble(const TwoSiteState& s, double cond_entropy, Measurement meas) {
    const auto spectrum = x_state_spectrum(s);
    const double sab = spectrum_entropy(spectrum);
    const double sa = entropy_of_subsystem_a(s);
    double value = sa - sab + cond_entropy;
    if (value < 0.0) {
        if (value < -1e-9)
            throw InternalConsistencyError("discord: negative value " + std::to_string(value));
        value = 0.0;
    }
    return {value, meas, cond_entropy};
}

DiscordResult discord_three_family(const TwoSiteState& s) {
    const double e1 = conditional_entropy(s, MeasurementKind::FamilyI);
    const double e2 = conditional_entropy(s, MeasurementKind::FamilyII);
    const double e3 = conditional_entropy(s, MeasurementKind::FamilyIII);
    MeasurementKind kind = MeasurementKind::FamilyI;
    double best = e1;
    if (e2 < best) {
        best = e2;
        kind = MeasurementKind::FamilyII;
    }
    if (e3 < best) {
        best = e3;
        kind = MeasurementKind::FamilyIII;
    }
    Measurement meas{kind, kind == MeasurementKind::FamilyIII ? 0.0 : 0.5 * kPi,
                     kind == MeasurementKind::FamilyI ? 0.5 * kPi : 0.0};
    return assemble(s, best, meas);
}

DiscordResult discord_grid(const TwoSiteState& s, int n_theta, int n_phi) {
    const GridMinimum g = grid_conditional_minimum(s, n_theta, n_phi);
    return assemble(s, g.value, snap_to_family(g.theta, g.phi));
}

}  // namespace

DiscordResult discord(const TwoSiteState& s, DiscordStrategy strategy) {
    switch (strategy.kind) {
        case DiscordStrategy::Kind::ThreeFamily:
            return discord_three_family(s);
        case DiscordStrategy::Kind::Grid:
            return discord_grid(s, strategy.n_theta, strategy.n_phi);
        case DiscordStrategy::Kind::XXTConditions: {
            // closed-form optimality conditions for X states with
            // |y+ + y-| >= |y+ - y-|; they reduce to the y- = 0 forms
            // (y+)^2 <= (u+ - z)(u- - z) and |sqrt(u+ u-) - |z|| <= |y+|.
            // Outside the applicability gate the grid search takes over.
            const bool applicable =
                std::abs(s.y_plus + s.y_minus) >= std::abs(s.y_plus - s.y_minus);
            const double y_sum = std::abs(s.y_plus) + std::abs(s.y_minus);
            const bool z_optimal = applicable && s.u_plus >= s.z_diag &&
                                   s.u_minus >= s.z_diag &&
                                   y_sum * y_sum <=
                                       (s.u_plus - s.z_diag) * (s.u_minus - s.z_diag);
            const bool x_optimal =
                applicable &&
                std::abs(std::sqrt(std::max(s.u_plus * s.u_minus, 0.0)) -
                         std::abs(s.z_diag)) <= y_sum;
            if (z_optimal && x_optimal) {
                const double e2 = conditional_entropy(s, MeasurementKind::FamilyII);
                const double e3 = conditional_entropy(s, MeasurementKind::FamilyIII);
                if (e2 <= e3)
                    return assemble(s, e2, {MeasurementKind::FamilyII, 0.5 * kPi, 0.0});
                return assemble(s, e3, {MeasurementKind::FamilyIII, 0.0, 0.0});
            }
            if (z_optimal)
                return assemble(s, conditional_entropy(s, MeasurementKind::FamilyIII),
                                {MeasurementKind::FamilyIII, 0.0, 0.0});
            if (x_optimal)
                return assemble(s, conditional_entropy(s, MeasurementKind::FamilyII),
                                {MeasurementKind::FamilyII, 0.5 * kPi, 0.0});
            return discord_grid(s, strategy.n_theta, strategy.n_phi);
        }
    }
    throw ConfigError("discord: unknown strategy");
}

double concurrence_range_factor(double alpha, double lambda) {
    const XxtRegion region = phase_region_xxt(alpha, lambda);
    if (region == XxtRegion::Critical)
        throw PhaseError("concurrence_range_factor: parameters on a critical line");
    const FermiPoints fp = fermi_points(alpha, lambda);
    if (region == XxtRegion::SL1) {
        const double p = fp.points.at(0);
        return p * p * (kPi - p) * (kPi - p);
    }
    if (region == XxtRegion::SL2) {
        const double pp = fp.points.at(0);
        const double pm = fp.points.at(1);
        const double e2 = (kPi + pp - pm) * (kPi + pp - pm);
        const double f2 = (pp - pm) * (pp - pm);
        return e2 * f2;
    }
    throw PhaseError("concurrence_range_factor: undefined in the ferromagnetic phase");
}

}  // namespace spinres
