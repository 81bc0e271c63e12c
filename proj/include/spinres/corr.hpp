#pragma once

#include <vector>

#include "spinres/model.hpp"

namespace spinres {

/// Backend used to evaluate the G_r contraction.
enum class GMethod { FiniteSum, Quadrature, AnalyticXXT };

/// Ground-state region of the XXT model (gamma = delta = 0).
enum class XxtRegion { FerrI, FerrII, SL1, SL2, Critical };

const char* to_string(GMethod m);
const char* to_string(XxtRegion r);

/// Momenta in [0, pi] where the XXT dispersion z(phi) vanishes, sorted
/// ascending. For alpha > 0 the first entry is the + branch of the closed
/// form; the count (0/1/2) labels the ferromagnetic, SL-I and SL-II phases.
struct FermiPoints {
    std::vector<double> points;
    std::size_t count() const { return points.size(); }
};

/// Table of G_r values for r in [-r_max, r_max], immutable once built.
struct GSeries {
    int r_max = 0;
    std::vector<double> values;  // index r + r_max
    GMethod method = GMethod::Quadrature;
    ModelParams params;

    double at(int r) const {
        if (r < -r_max || r > r_max)
            throw ConfigError("GSeries: r out of range");
        return values[static_cast<std::size_t>(r + r_max)];
    }
};

/// Finite-chain mode sum for G_r. Requires an odd chain_length and |r| < L.
/// Throws CriticalParametersError when a mode sits below the gap tolerance.
double g_finite(const ModelParams& params, int r);

/// Thermodynamic-limit quadrature for G_r with absolute tolerance tol.
/// The integration interval is split at every interior zero of z(phi) and of
/// the quasiparticle energy before adaptive integration. Throws
/// NonConvergenceError (carrying the best estimate) when the tolerance is
/// unreachable.
double g_quadrature(const ModelParams& params, int r, double tol = 1e-10);

/// Real Fermi points of the XXT dispersion. The degenerate limit |alpha| <
/// 1e-8 reduces to a single point arccos(lambda) when |lambda| <= 1.
FermiPoints fermi_points(double alpha, double lambda);

/// Region of the XXT phase diagram; points within 1e-9 of a critical line
/// classify as Critical.
XxtRegion phase_region_xxt(double alpha, double lambda);

/// Closed-form thermodynamic-limit G_r for the XXT model, dispatched on the
/// phase region. Throws AmbiguousPhaseError on critical-line input.
double g_analytic_xxt(double alpha, double lambda, int r);

/// Builds the full table for r in [-r_max, r_max] with the selected backend.
GSeries build_gseries(const ModelParams& params, GMethod method, int r_max, double tol = 1e-10);

}  // namespace spinres
