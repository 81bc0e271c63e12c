#pragma once

#include "spinres/corr.hpp"

namespace spinres {

/// Magnetization and two-site spin correlators at distance r.
struct Correlators {
    double mag_z = 0.0;  // <sigma^z>
    double xx = 0.0;     // <sigma^x_0 sigma^x_r>
    double yy = 0.0;     // <sigma^y_0 sigma^y_r>
    double zz = 0.0;     // <sigma^z_0 sigma^z_r>
    int distance = 0;
};

/// The five independent real elements of the X-shaped two-site reduced
/// density matrix
///
///     [ u_plus   .       .       y_minus ]
///     [ .        z_diag  y_plus  .       ]
///     [ .        y_plus  z_diag  .       ]
///     [ y_minus  .       .       u_minus ]
///
/// with unit trace u_plus + u_minus + 2 z_diag = 1.
struct TwoSiteState {
    double u_plus = 0.0;
    double u_minus = 0.0;
    double z_diag = 0.0;
    double y_plus = 0.0;
    double y_minus = 0.0;
    int distance = 0;

    double mag_z() const { return u_plus - u_minus; }
    double xx() const { return 2.0 * (y_plus + y_minus); }
    double yy() const { return 2.0 * (y_plus - y_minus); }
    double zz() const { return u_plus + u_minus - 2.0 * z_diag; }
};

/// Correlators at distance r >= 1 from a G table: the magnetization is G_0,
/// the transverse correlators are r x r Toeplitz determinants and
/// zz = G_0^2 - G_r G_{-r}. Requires g.r_max >= r.
Correlators correlators(const GSeries& g, int r);

/// Maps correlators to the matrix elements of the X state and validates the
/// result; positivity violations beyond 1e-8 raise InternalConsistencyError.
TwoSiteState state_from_correlators(const Correlators& c);

TwoSiteState reduced_state(const GSeries& g, int r);

/// Convenience wrapper building a fresh G table of range r. Prefer building
/// one GSeries and reusing it when states at many distances are needed.
TwoSiteState reduced_state(const ModelParams& params, int r, GMethod method, double tol = 1e-10);

}  // namespace spinres
