#include "spinres/rdm.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace spinres {

namespace {

constexpr double kPositivityTol = 1e-8;

// Dense LU determinant of the r x r Toeplitz matrix T(i, j) = G_{i - j + shift}.
double toeplitz_determinant(const GSeries& g, int r, int shift) {
    Eigen::MatrixXd t(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) t(i, j) = g.at(i - j + shift);
    if (r == 1) return t(0, 0);
    return Eigen::PartialPivLU<Eigen::MatrixXd>(t).determinant();
}

}  // namespace

Correlators correlators(const GSeries& g, int r) {
    if (r < 1) throw ConfigError("correlators: distance must be >= 1");
    if (g.r_max < r)
        throw ConfigError("correlators: GSeries range " + std::to_string(g.r_max) +
                          " is insufficient for r = " + std::to_string(r));
    Correlators c;
    c.distance = r;
    c.mag_z = g.at(0);
    c.xx = toeplitz_determinant(g, r, -1);
    c.yy = toeplitz_determinant(g, r, +1);
    c.zz = c.mag_z * c.mag_z - g.at(r) * g.at(-r);
    return c;
}

TwoSiteState state_from_correlators(const Correlators& c) {
    TwoSiteState s;
    s.distance = c.distance;
    s.u_plus = (1.0 + 2.0 * c.mag_z + c.zz) / 4.0;
    s.u_minus = (1.0 - 2.0 * c.mag_z + c.zz) / 4.0;
    s.z_diag = (1.0 - c.zz) / 4.0;
    s.y_plus = (c.xx + c.yy) / 4.0;
    s.y_minus = (c.xx - c.yy) / 4.0;

    const double trace = s.u_plus + s.u_minus + 2.0 * s.z_diag;
    if (std::abs(trace - 1.0) > 1e-10)
        throw InternalConsistencyError("two-site state: trace deviates from 1");
    if (s.u_plus < -kPositivityTol || s.u_minus < -kPositivityTol || s.z_diag < -kPositivityTol)
        throw InternalConsistencyError("two-site state: negative diagonal element");
    if (s.y_minus * s.y_minus > s.u_plus * s.u_minus + kPositivityTol)
        throw InternalConsistencyError("two-site state: |y-| exceeds sqrt(u+ u-)");
    if (s.y_plus * s.y_plus > s.z_diag * s.z_diag + kPositivityTol)
        throw InternalConsistencyError("two-site state: |y+| exceeds z");
    return s;
}

TwoSiteState reduced_state(const GSeries& g, int r) { return state_from_correlators(correlators(g, r)); }

TwoSiteState reduced_state(const ModelParams& params, int r, GMethod method, double tol) {
    return reduced_state(build_gseries(params, method, r, tol), r);
}

}  // namespace spinres
