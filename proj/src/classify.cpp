#include "spinres/classify.hpp"

#include <algorithm>
#include <cmath>

#include "spinres/rdm.hpp"
#include "spinres/resources.hpp"

namespace spinres {

const char* to_string(Measure m) {
    switch (m) {
        case Measure::Coherence: return "coherence";
        case Measure::Concurrence: return "concurrence";
        case Measure::Discord: return "discord";
    }
    return "?";
}

const char* to_string(DecayMode m) {
    switch (m) {
        case DecayMode::Zero: return "Zero";
        case DecayMode::Asymptotic: return "Asymptotic";
        case DecayMode::Oscillating: return "Oscillating";
        case DecayMode::Frozen: return "Frozen";
        case DecayMode::Undetermined: return "Undetermined";
    }
    return "?";
}

std::string PhaseLabel::to_string() const {
    switch (kind) {
        case Kind::Ferromagnetic: return "Ferromagnetic";
        case Kind::SpinLiquidI: return "SL-I";
        case Kind::SpinLiquidII: return "SL-II";
        case Kind::WindingSector: return "N=" + std::to_string(winding);
        case Kind::Critical: return "Critical";
        case Kind::Undetermined: return "Undetermined";
    }
    return "?";
}

DecayClass classify_decay(const ResourceProfile& profile, const DecayThresholds& cfg) {
    const auto& e = profile.entries;
    if (e.size() < 10)
        throw InsufficientDataError("classify_decay: need at least 10 profile entries");
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i].second < -1e-12)
            throw ConfigError("classify_decay: negative resource value");
        if (i > 0 && e[i].first <= e[i - 1].first)
            throw ConfigError("classify_decay: distances must increase strictly");
    }

    std::vector<double> v;
    v.reserve(e.size());
    for (const auto& [r, val] : e) v.push_back(val);

    DecayClass out;

    // tail statistics over the second half
    const std::size_t tail_begin = v.size() / 2;
    double tail_max = v[tail_begin], tail_min = v[tail_begin], tail_sum = 0.0;
    for (std::size_t i = tail_begin; i < v.size(); ++i) {
        tail_max = std::max(tail_max, v[i]);
        tail_min = std::min(tail_min, v[i]);
        tail_sum += v[i];
    }
    const double tail_mean = tail_sum / static_cast<double>(v.size() - tail_begin);
    out.tail_spread = tail_mean > 0.0 ? (tail_max - tail_min) / tail_mean : 0.0;

    // (1) zero everywhere
    if (*std::max_element(v.begin(), v.end()) <= cfg.zero_floor) {
        out.mode = DecayMode::Zero;
        return out;
    }
    // (2) frozen: flat nonzero tail
    if (tail_mean > cfg.zero_floor && out.tail_spread <= cfg.freeze_rel) {
        out.mode = DecayMode::Frozen;
        out.frozen_value = tail_mean;
        return out;
    }

    // interior extrema after burn-in: sign changes of consecutive significant
    // first differences
    const std::size_t start = std::min(static_cast<std::size_t>(std::max(cfg.burn_in, 0)),
                                       v.size() - 2);
    int extrema = 0;
    double prev_sign = 0.0;
    for (std::size_t i = start; i + 1 < v.size(); ++i) {
        const double d = v[i + 1] - v[i];
        if (std::abs(d) < cfg.zero_floor) continue;
        const double sign = d > 0.0 ? 1.0 : -1.0;
        if (prev_sign != 0.0 && sign != prev_sign) ++extrema;
        prev_sign = sign;
    }
    out.extremum_count = extrema;

    // (3) oscillating
    if (extrema >= cfg.min_extrema) {
        out.mode = DecayMode::Oscillating;
        return out;
    }
    // (4) asymptotic: monotone decay that actually loses most of its weight
    bool non_increasing = true;
    for (std::size_t i = start; i + 1 < v.size(); ++i)
        if (v[i + 1] - v[i] > cfg.zero_floor) non_increasing = false;
    if (non_increasing && tail_mean < cfg.decay_ratio * v[start]) {
        out.mode = DecayMode::Asymptotic;
        return out;
    }
    out.mode = DecayMode::Undetermined;
    return out;
}

ResourceProfile coherence_profile(const ModelParams& params, int r_max, GMethod method) {
    if (r_max < 1) throw ConfigError("coherence_profile: r_max must be >= 1");
    const GSeries g = build_gseries(params, method, r_max);
    ResourceProfile profile;
    profile.measure = Measure::Coherence;
    profile.entries.reserve(static_cast<std::size_t>(r_max));
    for (int r = 1; r <= r_max; ++r)
        profile.entries.emplace_back(r, coherence_l1(reduced_state(g, r)));
    return profile;
}

XxtDiagnosis diagnose_xxt(double alpha, double lambda, int r_max, const DecayThresholds& cfg) {
    XxtDiagnosis d;
    d.fermi = fermi_points(alpha, lambda);
    d.region_formula = phase_region_xxt(alpha, lambda);

    const ModelParams params{0.0, lambda, alpha, 0.0, std::nullopt};
    d.decay = classify_decay(coherence_profile(params, r_max), cfg);
    switch (d.decay.mode) {
        case DecayMode::Zero: d.label.kind = PhaseLabel::Kind::Ferromagnetic; break;
        case DecayMode::Asymptotic: d.label.kind = PhaseLabel::Kind::SpinLiquidI; break;
        case DecayMode::Oscillating: d.label.kind = PhaseLabel::Kind::SpinLiquidII; break;
        default: d.label.kind = PhaseLabel::Kind::Undetermined; break;
    }
    return d;
}

DecayThresholds topological_thresholds() {
    DecayThresholds cfg;
    cfg.burn_in = 8;
    return cfg;
}

TopologicalDiagnosis diagnose_topological(const ModelParams& params, int r_max,
                                          const DecayThresholds& cfg) {
    TopologicalDiagnosis d;
    d.winding = winding_number(params);  // throws on gapless input
    d.label.kind = PhaseLabel::Kind::WindingSector;
    d.label.winding = d.winding.n;
    d.decay = classify_decay(coherence_profile(params, r_max), cfg);

    const int abs_n = std::abs(d.winding.n);
    if (abs_n == 1) {
        d.consistent = d.decay.mode == DecayMode::Frozen;
    } else {
        // |N| = 2 and N = 0 sectors damp out, in either the oscillating or the
        // asymptotic mode
        d.consistent = d.decay.mode == DecayMode::Oscillating ||
                       d.decay.mode == DecayMode::Asymptotic ||
                       d.decay.mode == DecayMode::Zero;
    }
    return d;
}

}  // namespace spinres
