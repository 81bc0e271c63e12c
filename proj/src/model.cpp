#include "spinres/model.hpp"

#include <numbers>

namespace spinres {

double bogoliubov_angle(double z, double y) {
    if (z == 0.0 && y == 0.0)
        throw CriticalParametersError("bogoliubov_angle: zero quasiparticle energy (critical mode)");
    // avoid the negative-zero branch of atan2 so that (z < 0, y = 0) maps to +pi
    const double ny = y == 0.0 ? 0.0 : -y;
    return std::atan2(ny, z);
}

std::vector<ModeData> mode_grid(const ModelParams& p) {
    if (!p.chain_length)
        throw ConfigError("mode_grid: chain_length is required");
    const int L = *p.chain_length;
    if (L < 3 || L % 2 == 0)
        throw ConfigError("mode_grid: chain_length must be odd and >= 3, got " + std::to_string(L));

    const int M = (L - 1) / 2;
    const double tol = gap_tolerance(p);
    std::vector<ModeData> modes;
    modes.reserve(static_cast<std::size_t>(L));
    for (int k = -M; k <= M; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / L;
        const Dispersion d = dispersion(p, phi);
        const double theta = d.energy > tol ? bogoliubov_angle(d.z, d.y) : 0.0;
        modes.push_back({phi, d.z, d.y, d.energy, theta});
    }
    return modes;
}

}  // namespace spinres
