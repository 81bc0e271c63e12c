#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "spinres/errors.hpp"

namespace spinres {

/// Couplings of the spin chain Hamiltonian.
///
/// gamma: anisotropy of the nearest-neighbor two-spin coupling
/// lambda: transverse field strength
/// alpha: strength of the three-spin interaction
/// delta: anisotropy of the three-spin interaction
/// chain_length: optional finite chain length L (odd, >= 3); when absent the
/// thermodynamic-limit routes apply.
struct ModelParams {
    double gamma = 0.0;
    double lambda = 0.0;
    double alpha = 0.0;
    double delta = 0.0;
    std::optional<int> chain_length;

    bool is_xxt() const { return gamma == 0.0 && delta == 0.0; }
};

/// Dispersion components at one momentum: z is the field-direction component,
/// y the pairing component, energy = sqrt(z^2 + y^2).
struct Dispersion {
    double z;
    double y;
    double energy;
};

/// One momentum mode of the finite-chain grid.
struct ModeData {
    double phi;     // momentum in (-pi, pi]
    double z;
    double y;
    double energy;  // quasiparticle energy, >= 0
    double theta;   // Bogoliubov angle; 0 for critical (zero-energy) modes
};

inline double dispersion_z(const ModelParams& p, double phi) {
    return p.lambda - std::cos(phi) - p.alpha * std::cos(2.0 * phi);
}

inline double dispersion_y(const ModelParams& p, double phi) {
    return p.gamma * std::sin(phi) + p.alpha * p.delta * std::sin(2.0 * phi);
}

inline Dispersion dispersion(const ModelParams& p, double phi) {
    const double z = dispersion_z(p, phi);
    const double y = dispersion_y(p, phi);
    return {z, y, std::hypot(z, y)};
}

/// Modes with energy below this scale-aware floor count as critical.
inline double gap_tolerance(const ModelParams& p) {
    return 1e-12 * std::max(1.0, std::abs(p.lambda) + std::abs(p.alpha) + std::abs(p.gamma));
}

/// Quadrant-aware Bogoliubov angle: sin(theta) = -y/energy and
/// cos(theta) = z/energy. Throws CriticalParametersError when (z, y) = (0, 0).
double bogoliubov_angle(double z, double y);

/// Momentum grid phi_k = 2 pi k / L, k = -M..M with M = (L-1)/2, with the
/// dispersion and Bogoliubov angle filled in for each mode.
std::vector<ModeData> mode_grid(const ModelParams& p);

}  // namespace spinres
