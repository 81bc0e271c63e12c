#pragma once

#include <vector>

#include "spinres/model.hpp"

namespace spinres {

/// Winding number of the (y, z) dispersion loop around the origin.
struct WindingResult {
    int n = 0;
    double raw = 0.0;             // accumulated angle / 2 pi before rounding
    double closure_defect = 0.0;  // |raw - n|
};

enum class ScanAxis { Alpha, Lambda, Gamma, Delta };

const char* to_string(ScanAxis a);
ModelParams with_axis(ModelParams params, ScanAxis axis, double value);

/// Winding of (y(phi), z(phi)) as phi traverses [0, 2 pi), accumulated from
/// quadrant-aware angle increments wrapped to (-pi, pi]. The orientation
/// counts counterclockwise rotation in the y-z plane as positive. Throws
/// CriticalParametersError for gapless parameters and NumericalError when the
/// angular resolution is insufficient (closure defect above 1e-3).
WindingResult winding_number(const ModelParams& params, int n_steps = 4096);

/// Same invariant evaluated as the loop integral of (y z' - z y') / |r|^2
/// with analytic derivatives, by the trapezoid rule. Cross-check route for
/// winding_number.
double winding_integral(const ModelParams& params, int n_steps = 4096);

/// Global minimum of the quasiparticle energy over phi in [0, pi], located by
/// scanning plus golden-section refinement.
struct GapMinimum {
    double phi_star = 0.0;
    double gap = 0.0;
};
GapMinimum gap_minimum(const ModelParams& params, int n_scan = 2048);

/// Gap-closing parameter values along one axis in [lo, hi], located to 1e-8
/// and sorted ascending. Detects both isolated closings and boundaries of
/// gapless regions.
std::vector<double> critical_scan(const ModelParams& params, ScanAxis axis, double lo, double hi,
                                  int n);

/// One row of the adjacent-site coherence scan.
struct CoherenceScanPoint {
    double value = 0.0;       // axis value
    double coherence = 0.0;   // C_l1 at r = 1
    double derivative = 0.0;  // central difference along the axis
    bool divergent = false;   // |derivative| > 10x median near a critical value
};

/// C_l1(r = 1) over an axis grid with its first derivative; points where the
/// derivative spikes near a gap closing are flagged.
std::vector<CoherenceScanPoint> coherence_derivative_scan(const ModelParams& params, ScanAxis axis,
                                                          double lo, double hi, int n);

}  // namespace spinres
