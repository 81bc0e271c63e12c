#pragma once

#include <array>
#include <span>
#include <string>

#include "spinres/rdm.hpp"

namespace spinres {

/// Projective measurement families on the first site. I, II and III are the
/// sigma_y, sigma_x and sigma_z bases; Grid marks a general direction found
/// by angle search.
enum class MeasurementKind { FamilyI, FamilyII, FamilyIII, Grid };

const char* to_string(MeasurementKind k);

struct Measurement {
    MeasurementKind kind = MeasurementKind::Grid;
    double theta = 0.0;
    double phi = 0.0;
};

struct DiscordResult {
    double value = 0.0;                 // bits
    Measurement optimal_measurement;
    double conditional_entropy = 0.0;   // measurement-induced, at the optimum
};

/// Strategy for the conditional-entropy minimization in the discord.
struct DiscordStrategy {
    enum class Kind {
        XXTConditions,  // closed-form optimality conditions, grid fallback
        ThreeFamily,    // min over the three measurement families
        Grid,           // exhaustive angle grid with one refinement pass
    };
    Kind kind = Kind::ThreeFamily;
    int n_theta = 181;
    int n_phi = 91;

    static DiscordStrategy xxt_conditions() { return {Kind::XXTConditions, 181, 91}; }
    static DiscordStrategy three_family() { return {Kind::ThreeFamily, 181, 91}; }
    static DiscordStrategy grid(int n_theta = 181, int n_phi = 91) {
        return {Kind::Grid, n_theta, n_phi};
    }
};

/// l1-norm coherence 2(|y+| + |y-|) of the X state.
double coherence_l1(const TwoSiteState& state);

/// X-state concurrence max{0, 2(|y+| - sqrt(u+ u-)), 2(|y-| - z)}.
double concurrence(const TwoSiteState& state);

/// Shannon entropy (base 2) of a spectrum summing to one. Negative noise
/// eigenvalues down to -1e-12 are clipped; a sum off by more than 1e-9
/// raises NormalizationError.
double entropy(std::span<const double> eigs);

/// Spectrum of the X-shaped two-site density matrix.
std::array<double, 4> x_state_spectrum(const TwoSiteState& state);

/// Closed-form measurement-induced conditional entropy for family I, II or
/// III. Fully polarized branches (p = 0) contribute zero.
double conditional_entropy(const TwoSiteState& state, MeasurementKind family);

/// Conditional entropy after measuring along the Bloch direction
/// (sin t cos p, sin t sin p, cos t) on the first site.
double measured_conditional_entropy(const TwoSiteState& state, double theta, double phi);

/// Quantum discord D_A with the measurement minimization carried out by the
/// requested strategy. The result always reports the achieving measurement.
DiscordResult discord(const TwoSiteState& state, DiscordStrategy strategy = {});

/// Distance-independent factor controlling the long-range concurrence bound:
/// C1*D1 in SL-I and E2*F2 in SL-II; small values predict long-range
/// entanglement. Throws PhaseError outside the spin-liquid phases.
double concurrence_range_factor(double alpha, double lambda);

}  // namespace spinres
