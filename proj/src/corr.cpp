#include "spinres/corr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinres/quadrature.hpp"

namespace spinres {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCriticalLineTol = 1e-9;
constexpr double kAlphaDegenerate = 1e-8;

// Bisection refinement of a sign change of g on [a, b].
template <class F>
double bisect(const F& g, double a, double b) {
    double fa = g(a);
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = g(m);
        if (fa * fm <= 0.0) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

// Golden-section minimization on [a, b].
template <class F>
double golden_min(const F& g, double a, double b, double tol = 1e-12) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = g(x2);
        }
    }
    return 0.5 * (a + b);
}

// Interior points of [0, pi] where the integrand loses smoothness: zeros of
// z(phi) (sign discontinuities of the XXT kernel) and zeros of the energy.
std::vector<double> split_points(const ModelParams& p) {
    constexpr int kScan = 1024;
    std::vector<double> splits;

    auto z = [&](double phi) { return dispersion_z(p, phi); };
    auto energy = [&](double phi) { return dispersion(p, phi).energy; };

    double prev_phi = 0.0;
    double prev_z = z(0.0);
    double prev_e = energy(0.0);
    double prev_prev_e = prev_e;
    double prev_prev_phi = prev_phi;
    for (int i = 1; i <= kScan; ++i) {
        const double phi = kPi * i / kScan;
        const double zi = z(phi);
        if (prev_z == 0.0 || prev_z * zi < 0.0)
            splits.push_back(bisect(z, prev_phi, phi));
        const double ei = energy(phi);
        // refine interior local minima of the energy; a near-zero minimum marks
        // a gap closing the panels must not straddle
        if (i >= 2 && prev_e <= prev_prev_e && prev_e <= ei) {
            const double m = golden_min(energy, prev_prev_phi, phi);
            if (energy(m) < 1e-7) splits.push_back(m);
        }
        prev_prev_e = prev_e;
        prev_prev_phi = prev_phi;
        prev_e = ei;
        prev_z = zi;
        prev_phi = phi;
    }
    std::sort(splits.begin(), splits.end());
    splits.erase(std::unique(splits.begin(), splits.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 splits.end());
    return splits;
}

double quadrature_with_splits(const ModelParams& p, int r, double tol,
                              const std::vector<double>& splits) {
    auto kernel = [&](double phi) {
        const Dispersion d = dispersion(p, phi);
        return (std::cos(phi * r) * d.z + std::sin(phi * r) * d.y) / d.energy;
    };

    std::vector<double> edges{0.0};
    for (double s : splits)
        if (s > 1e-14 && s < kPi - 1e-14) edges.push_back(s);
    edges.push_back(kPi);

    const double inner_tol = 0.5 * tol * kPi;  // kernel integral carries a 1/pi factor
    double total = 0.0;
    double err = 0.0;
    bool converged = true;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double len = edges[i + 1] - edges[i];
        const auto res =
            adaptive_gk15(kernel, edges[i], edges[i + 1], inner_tol * len / kPi, 8192);
        total += res.value;
        err += res.error;
        converged = converged && res.converged;
    }
    const double value = -total / kPi;
    if (!converged && err / kPi > tol)
        throw NonConvergenceError("g_quadrature: tolerance not reached", value, err / kPi);
    return value;
}

bool near_critical_line(double alpha, double lambda) {
    if (std::abs(lambda - (alpha + 1.0)) <= kCriticalLineTol) return true;
    if (alpha >= -kCriticalLineTol && std::abs(lambda - (alpha - 1.0)) <= kCriticalLineTol)
        return true;
    if (alpha >= 0.25 - kCriticalLineTol && alpha > 0.0 &&
        std::abs(lambda + (1.0 + 8.0 * alpha * alpha) / (8.0 * alpha)) <= kCriticalLineTol)
        return true;
    return false;
}

}  // namespace

const char* to_string(GMethod m) {
    switch (m) {
        case GMethod::FiniteSum: return "finite";
        case GMethod::Quadrature: return "quadrature";
        case GMethod::AnalyticXXT: return "analytic";
    }
    return "?";
}

const char* to_string(XxtRegion r) {
    switch (r) {
        case XxtRegion::FerrI: return "Ferr-I";
        case XxtRegion::FerrII: return "Ferr-II";
        case XxtRegion::SL1: return "SL-I";
        case XxtRegion::SL2: return "SL-II";
        case XxtRegion::Critical: return "Critical";
    }
    return "?";
}

double g_finite(const ModelParams& params, int r) {
    if (!params.chain_length)
        throw ConfigError("g_finite: chain_length is required");
    const int L = *params.chain_length;
    if (std::abs(r) >= L)
        throw ConfigError("g_finite: |r| must be smaller than the chain length");

    const auto modes = mode_grid(params);
    const double tol = gap_tolerance(params);
    double sum = 0.0;
    for (const ModeData& m : modes) {
        if (m.energy <= tol)
            throw CriticalParametersError("g_finite: gapless mode at phi = " +
                                          std::to_string(m.phi));
        sum += (std::cos(m.phi * r) * m.z + std::sin(m.phi * r) * m.y) / m.energy;
    }
    return -sum / L;
}

double g_quadrature(const ModelParams& params, int r, double tol) {
    if (tol <= 0.0) throw ConfigError("g_quadrature: tol must be positive");
    return quadrature_with_splits(params, r, tol, split_points(params));
}

FermiPoints fermi_points(double alpha, double lambda) {
    FermiPoints out;
    if (std::abs(alpha) < kAlphaDegenerate) {
        // z(phi) = lambda - cos(phi): a single root when |lambda| <= 1
        if (std::abs(lambda) <= 1.0) out.points.push_back(std::acos(lambda));
        return out;
    }
    const double disc = 1.0 + 8.0 * alpha * alpha + 8.0 * alpha * lambda;
    if (disc < 0.0) return out;
    const double sq = std::sqrt(disc);
    for (double sign : {+1.0, -1.0}) {
        const double u = (-1.0 + sign * sq) / (4.0 * alpha);
        if (u >= -1.0 && u <= 1.0) out.points.push_back(std::acos(u));
    }
    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end(),
                                 [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                     out.points.end());
    return out;
}

XxtRegion phase_region_xxt(double alpha, double lambda) {
    if (near_critical_line(alpha, lambda)) return XxtRegion::Critical;
    const FermiPoints fp = fermi_points(alpha, lambda);
    switch (fp.count()) {
        case 1: return XxtRegion::SL1;
        case 2: return XxtRegion::SL2;
        default: break;
    }
    // no Fermi point: z(phi) keeps one sign; probe it at phi = 0
    const ModelParams p{0.0, lambda, alpha, 0.0, std::nullopt};
    return dispersion_z(p, 0.0) > 0.0 ? XxtRegion::FerrI : XxtRegion::FerrII;
}

double g_analytic_xxt(double alpha, double lambda, int r) {
    const XxtRegion region = phase_region_xxt(alpha, lambda);
    if (region == XxtRegion::Critical)
        throw AmbiguousPhaseError("g_analytic_xxt: parameters lie on a critical line");

    // Piecewise-constant sign of z(phi) between consecutive Fermi points turns
    // the kernel into +-cos(r phi); integrate each segment in closed form.
    const FermiPoints fp = fermi_points(alpha, lambda);
    std::vector<double> edges{0.0};
    edges.insert(edges.end(), fp.points.begin(), fp.points.end());
    edges.push_back(kPi);

    const ModelParams p{0.0, lambda, alpha, 0.0, std::nullopt};
    // sin(r phi) vanishes identically at the zone edge for integer r
    auto sin_r = [&](double phi) { return phi == kPi ? 0.0 : std::sin(r * phi); };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i], b = edges[i + 1];
        if (b - a < 1e-15) continue;
        const double sign = dispersion_z(p, 0.5 * (a + b)) > 0.0 ? 1.0 : -1.0;
        const double piece = r == 0 ? (b - a) : (sin_r(b) - sin_r(a)) / static_cast<double>(r);
        total += sign * piece;
    }
    return -total / kPi;
}

GSeries build_gseries(const ModelParams& params, GMethod method, int r_max, double tol) {
    if (r_max < 0) throw ConfigError("build_gseries: r_max must be nonnegative");
    GSeries series;
    series.r_max = r_max;
    series.method = method;
    series.params = params;
    series.values.resize(static_cast<std::size_t>(2 * r_max + 1));

    switch (method) {
        case GMethod::FiniteSum:
            for (int r = -r_max; r <= r_max; ++r)
                series.values[static_cast<std::size_t>(r + r_max)] = g_finite(params, r);
            break;
        case GMethod::Quadrature: {
            if (tol <= 0.0) throw ConfigError("build_gseries: tol must be positive");
            const auto splits = split_points(params);
            for (int r = -r_max; r <= r_max; ++r)
                series.values[static_cast<std::size_t>(r + r_max)] =
                    quadrature_with_splits(params, r, tol, splits);
            break;
        }
        case GMethod::AnalyticXXT:
            if (!params.is_xxt())
                throw ConfigError("build_gseries: analytic backend requires gamma = delta = 0");
            for (int r = -r_max; r <= r_max; ++r)
                series.values[static_cast<std::size_t>(r + r_max)] =
                    g_analytic_xxt(params.alpha, params.lambda, r);
            break;
    }
    return series;
}

}  // namespace spinres
