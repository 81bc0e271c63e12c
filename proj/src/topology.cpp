#include "spinres/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinres/rdm.hpp"
#include "spinres/resources.hpp"

namespace spinres {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    while (a > kPi) a -= kTwoPi;
    while (a <= -kPi) a += kTwoPi;
    return a;
}

template <class F>
double golden_min(const F& f, double a, double b, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
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
    return 0.5 * (a + b);
}

}  // namespace

const char* to_string(ScanAxis a) {
    switch (a) {
        case ScanAxis::Alpha: return "alpha";
        case ScanAxis::Lambda: return "lambda";
        case ScanAxis::Gamma: return "gamma";
        case ScanAxis::Delta: return "delta";
    }
    return "?";
}

ModelParams with_axis(ModelParams params, ScanAxis axis, double value) {
    switch (axis) {
        case ScanAxis::Alpha: params.alpha = value; break;
        case ScanAxis::Lambda: params.lambda = value; break;
        case ScanAxis::Gamma: params.gamma = value; break;
        case ScanAxis::Delta: params.delta = value; break;
    }
    return params;
}

WindingResult winding_number(const ModelParams& params, int n_steps) {
    if (n_steps < 8) throw ConfigError("winding_number: n_steps too small");
    const double tol = gap_tolerance(params);
    if (gap_minimum(params).gap <= tol)
        throw CriticalParametersError("winding_number: dispersion loop crosses the origin");

    double total = 0.0;
    double prev = std::atan2(dispersion_z(params, 0.0), dispersion_y(params, 0.0));
    for (int i = 1; i <= n_steps; ++i) {
        const double phi = kTwoPi * i / n_steps;
        const double ang = std::atan2(dispersion_z(params, phi), dispersion_y(params, phi));
        total += wrap_angle(ang - prev);
        prev = ang;
    }
    WindingResult out;
    out.raw = total / kTwoPi;
    out.n = static_cast<int>(std::lround(out.raw));
    out.closure_defect = std::abs(out.raw - out.n);
    if (out.closure_defect > 1e-3)
        throw NumericalError("winding_number: closure defect " +
                             std::to_string(out.closure_defect) +
                             "; increase n_steps");
    return out;
}

double winding_integral(const ModelParams& params, int n_steps) {
    // y z' - z y' over |r|^2 with z' = sin(phi) + 2 alpha sin(2 phi),
    // y' = gamma cos(phi) + 2 alpha delta cos(2 phi); periodic trapezoid.
    auto integrand = [&](double phi) {
        const double z = dispersion_z(params, phi);
        const double y = dispersion_y(params, phi);
        const double zp = std::sin(phi) + 2.0 * params.alpha * std::sin(2.0 * phi);
        const double yp =
            params.gamma * std::cos(phi) + 2.0 * params.alpha * params.delta * std::cos(2.0 * phi);
        return (y * zp - z * yp) / (y * y + z * z);
    };
    double sum = 0.0;
    for (int i = 0; i < n_steps; ++i) sum += integrand(kTwoPi * i / n_steps);
    return sum * (kTwoPi / n_steps) / kTwoPi;
}

GapMinimum gap_minimum(const ModelParams& params, int n_scan) {
    if (n_scan < 8) throw ConfigError("gap_minimum: n_scan too small");
    auto energy = [&](double phi) { return dispersion(params, phi).energy; };

    // energy is even in phi; scanning [0, pi] covers the zone
    double best_phi = 0.0;
    double best = energy(0.0);
    std::vector<double> vals(static_cast<std::size_t>(n_scan + 1));
    for (int i = 0; i <= n_scan; ++i) {
        const double phi = kPi * i / n_scan;
        vals[static_cast<std::size_t>(i)] = energy(phi);
        if (vals[static_cast<std::size_t>(i)] < best) {
            best = vals[static_cast<std::size_t>(i)];
            best_phi = phi;
        }
    }
    // refine every interior local minimum plus the endpoints' neighborhoods
    for (int i = 1; i < n_scan; ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        if (vals[u] <= vals[u - 1] && vals[u] <= vals[u + 1]) {
            const double phi =
                golden_min(energy, kPi * (i - 1) / n_scan, kPi * (i + 1) / n_scan, 1e-13);
            const double e = energy(phi);
            if (e < best) {
                best = e;
                best_phi = phi;
            }
        }
    }
    return {best_phi, best};
}

std::vector<double> critical_scan(const ModelParams& params, ScanAxis axis, double lo, double hi,
                                  int n) {
    if (!(lo < hi)) throw ConfigError("critical_scan: need lo < hi");
    if (n < 3) throw ConfigError("critical_scan: need n >= 3");

    const double tol = 1e-9 * std::max(1.0, std::abs(lo) + std::abs(hi));
    auto gap_at = [&](double x) { return gap_minimum(with_axis(params, axis, x)).gap; };

    std::vector<double> xs(static_cast<std::size_t>(n));
    std::vector<double> gaps(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
        gaps[static_cast<std::size_t>(i)] = gap_at(xs[static_cast<std::size_t>(i)]);
    }

    std::vector<double> roots;
    auto gapless = [&](double g) { return g <= tol; };

    // boundaries of gapless stretches: bisect the gapless predicate
    for (int i = 0; i + 1 < n; ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        if (gapless(gaps[u]) == gapless(gaps[u + 1])) continue;
        double a = xs[u], b = xs[u + 1];
        bool a_gapless = gapless(gaps[u]);
        while (b - a > 1e-9) {
            const double m = 0.5 * (a + b);
            if (gapless(gap_at(m)) == a_gapless)
                a = m;
            else
                b = m;
        }
        roots.push_back(0.5 * (a + b));
    }

    // isolated closings: descend into interior V-shaped minima of the gap
    for (int i = 1; i + 1 < n; ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        if (gapless(gaps[u])) continue;
        if (gaps[u] <= gaps[u - 1] && gaps[u] <= gaps[u + 1]) {
            const double x = golden_min(gap_at, xs[u - 1], xs[u + 1], 1e-10);
            if (gap_at(x) <= std::max(tol, 1e-7)) roots.push_back(x);
        }
    }

    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-6; }),
                roots.end());
    return roots;
}

std::vector<CoherenceScanPoint> coherence_derivative_scan(const ModelParams& params, ScanAxis axis,
                                                          double lo, double hi, int n) {
    if (n < 5) throw ConfigError("coherence_derivative_scan: need n >= 5");
    if (!(lo < hi)) throw ConfigError("coherence_derivative_scan: need lo < hi");

    std::vector<CoherenceScanPoint> table(static_cast<std::size_t>(n));
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double x = lo + h * i;
        table[static_cast<std::size_t>(i)].value = x;
        table[static_cast<std::size_t>(i)].coherence =
            coherence_l1(reduced_state(with_axis(params, axis, x), 1, GMethod::Quadrature));
    }
    for (int i = 0; i < n; ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        if (i == 0)
            table[u].derivative = (table[u + 1].coherence - table[u].coherence) / h;
        else if (i == n - 1)
            table[u].derivative = (table[u].coherence - table[u - 1].coherence) / h;
        else
            table[u].derivative = (table[u + 1].coherence - table[u - 1].coherence) / (2.0 * h);
    }

    std::vector<double> mags;
    mags.reserve(table.size());
    for (const auto& p : table) mags.push_back(std::abs(p.derivative));
    std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
    const double median = mags[mags.size() / 2];

    const auto roots = critical_scan(params, axis, lo, hi, n);
    for (auto& p : table) {
        if (std::abs(p.derivative) <= 10.0 * median) continue;
        for (double r : roots) {
            if (std::abs(p.value - r) <= 2.0 * h) {
                p.divergent = true;
                break;
            }
        }
    }
    return table;
}

}  // namespace spinres
