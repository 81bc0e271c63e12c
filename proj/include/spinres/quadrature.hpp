#pragma once

#include <functional>

namespace spinres {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;   // estimated absolute error
    bool converged = false;
    int panels = 0;
};

/// Adaptive quadrature of f on [a, b] with a fixed 15-point Gauss-Kronrod rule
/// per panel. Splits the worst panel until the summed error estimate drops
/// below abs_tol or max_panels is reached. Never throws; inspect `converged`.
QuadratureResult adaptive_gk15(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, int max_panels = 4096);

}  // namespace spinres
