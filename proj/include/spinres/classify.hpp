#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinres/corr.hpp"
#include "spinres/topology.hpp"

namespace spinres {

enum class Measure { Coherence, Concurrence, Discord };
const char* to_string(Measure m);

/// One resource measure versus two-site distance, r strictly increasing.
struct ResourceProfile {
    std::vector<std::pair<int, double>> entries;
    Measure measure = Measure::Coherence;
};

enum class DecayMode { Zero, Asymptotic, Oscillating, Frozen, Undetermined };
const char* to_string(DecayMode m);

struct DecayClass {
    DecayMode mode = DecayMode::Undetermined;
    std::optional<double> frozen_value;  // set iff mode == Frozen
    int extremum_count = 0;              // interior extrema after burn-in
    double tail_spread = 0.0;            // (max - min) / mean over the tail half
};

/// Decision thresholds of the decay classifier. The decay modes are
/// qualitative; every quantitative cutoff here is tunable configuration.
struct DecayThresholds {
    double zero_floor = 1e-4;   // below this the profile counts as zero
    double freeze_rel = 1e-2;   // max relative spread of a frozen tail
    int min_extrema = 4;        // extrema needed to call a profile oscillating
    int burn_in = 3;            // entries ignored as short-distance transient
    double decay_ratio = 0.5;   // tail mean must drop below this fraction of
                                // the burn-in value to count as asymptotic
};

/// Diagnosed phase.
struct PhaseLabel {
    enum class Kind {
        Ferromagnetic,
        SpinLiquidI,
        SpinLiquidII,
        WindingSector,
        Critical,
        Undetermined,
    };
    Kind kind = Kind::Undetermined;
    int winding = 0;  // meaningful for WindingSector

    std::string to_string() const;
};

/// Classifies a resource-versus-distance profile. Requires >= 10 entries.
/// Decision order: Zero, Frozen, Oscillating, Asymptotic, Undetermined.
DecayClass classify_decay(const ResourceProfile& profile, const DecayThresholds& cfg = {});

/// XXT phase diagnosis from the coherence decay mode with the quadrature
/// backend: Zero -> ferromagnetic, Asymptotic -> SL-I, Oscillating -> SL-II.
struct XxtDiagnosis {
    PhaseLabel label;
    DecayClass decay;
    FermiPoints fermi;        // evidence
    XxtRegion region_formula; // independent closed-form region
};
XxtDiagnosis diagnose_xxt(double alpha, double lambda, int r_max = 30,
                          const DecayThresholds& cfg = {});

/// Topological-sector diagnosis: winding number paired with the coherence
/// decay class. The default thresholds use burn-in 8 because the three-spin
/// coupling induces a short-distance transient out to r ~ 8 in the |N| = 2
/// sectors.
struct TopologicalDiagnosis {
    PhaseLabel label;
    DecayClass decay;
    WindingResult winding;
    bool consistent = false;  // decay mode matches the sector expectation
};

DecayThresholds topological_thresholds();
TopologicalDiagnosis diagnose_topological(const ModelParams& params, int r_max = 30,
                                          const DecayThresholds& cfg = topological_thresholds());

/// Coherence profile r = 1..r_max through the requested backend.
ResourceProfile coherence_profile(const ModelParams& params, int r_max,
                                  GMethod method = GMethod::Quadrature);

}  // namespace spinres
