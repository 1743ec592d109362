#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "ranslice/errors.hpp"
#include "ranslice/inter_slice.hpp"
#include "ranslice/metrics.hpp"
#include "ranslice/sla.hpp"

namespace ranslice {

// Observed deviations feeding the corrective loop. Deviation entries are
// signed, (desired - actual) normalized by the desired value of each slice's
// primary intent. Load is offered bits over servable bits.
struct HealingState {
    std::vector<double> deviations;
    double load = 0.0;
    RbgCombination allocation;
};

struct WeightDelta {
    std::vector<double> dw;
    double delta_max = 0.1;
};

struct HealingConfig {
    bool enabled = true;
    double delta_max = 0.1;
    double pi_min = 0.2;
    double pi_max = 3.0;
    double k_p = 0.5;
    int cadence_steps = 10;
    double urllc_delay_floor_s = 0.1e-3;  // reward denominator floor

    void validate() const {
        if (!(delta_max > 0.0)) throw config_error("delta_max must be > 0");
        if (!(pi_min > 0.0 && pi_min <= 1.0 && pi_max >= 1.0))
            throw config_error("priority bounds must bracket 1");
        if (cadence_steps < 1) throw config_error("healing cadence must be >= 1");
        if (!(urllc_delay_floor_s > 0.0)) throw config_error("delay floor must be > 0");
    }
};

// Primary intent per slice kind: eMBB throughput, URLLC latency, BE long-term
// throughput.
inline double primary_deviation(const SliceSla& sla, const SliceKpis& kpis) {
    switch (sla.kind) {
        case SliceKind::embb:
            return (sla.r_req_bps - kpis.throughput_bps) / sla.r_req_bps;
        case SliceKind::urllc:
            return (sla.l_req_s - kpis.latency_s) / sla.l_req_s;
        case SliceKind::be:
            return (sla.g_req_bps - kpis.throughput_bps) / sla.g_req_bps;
    }
    return 0.0;
}

// Nonnegative violation magnitude derived from the signed deviation, oriented
// by the intent's inequality direction.
inline double primary_violation(const SliceSla& sla, double deviation) {
    if (sla.kind == SliceKind::urllc) return std::max(0.0, -deviation);  // latency: actual above desired
    return std::max(0.0, deviation);                                     // throughput floors
}

inline HealingState build_healing_state(std::span<const SliceKpis> kpis,
                                        std::span<const SliceSla> slas,
                                        const RbgCombination& allocation,
                                        double offered_bits, double servable_bits) {
    if (kpis.size() != slas.size()) throw contract_error("kpi/sla span size mismatch");
    HealingState st;
    st.allocation = allocation;
    for (std::size_t s = 0; s < slas.size(); ++s)
        st.deviations.push_back(primary_deviation(slas[s], kpis[s]));
    st.load = (servable_bits > 0.0 && offered_bits > 0.0) ? offered_bits / servable_bits : 0.0;
    return st;
}

using HealingController = std::function<WeightDelta(const HealingState&)>;

// Proportional controller: each slice's delta is its violation minus the mean
// violation (so compliant slices yield weight), scaled by k_p and clipped to
// the bound. `scale` lets the orchestration layer modulate aggressiveness.
inline WeightDelta propose_deltas(const HealingState& state, std::span<const SliceSla> slas,
                                  const HealingConfig& cfg, double scale = 1.0) {
    if (state.deviations.size() != slas.size())
        throw contract_error("healing state does not match slice count");
    WeightDelta delta;
    delta.delta_max = cfg.delta_max;
    std::vector<double> violation(slas.size(), 0.0);
    double mean_violation = 0.0;
    for (std::size_t s = 0; s < slas.size(); ++s) {
        violation[s] = primary_violation(slas[s], state.deviations[s]);
        mean_violation += violation[s];
    }
    mean_violation /= static_cast<double>(slas.size());
    for (std::size_t s = 0; s < slas.size(); ++s) {
        double raw = cfg.k_p * scale * (violation[s] - mean_violation);
        delta.dw.push_back(std::clamp(raw, -cfg.delta_max, cfg.delta_max));
    }
    return delta;
}

// Slice-specific compliance ratio: 1 at the boundary, above 1 when the intent
// is over-fulfilled. URLLC divides by a floored measured delay.
inline double healing_reward(SliceKind kind, const SliceKpis& kpis, const SliceSla& sla,
                             double delay_floor_s = 0.1e-3) {
    switch (kind) {
        case SliceKind::embb:
            if (!(sla.r_req_bps > 0.0)) throw contract_error("embb target must be > 0");
            return kpis.throughput_bps / sla.r_req_bps;
        case SliceKind::urllc:
            if (!(sla.l_req_s > 0.0)) throw contract_error("urllc target must be > 0");
            return sla.l_req_s / std::max(kpis.latency_s, delay_floor_s);
        case SliceKind::be:
            if (!(sla.f_req_bps > 0.0)) throw contract_error("be target must be > 0");
            return kpis.fifth_pct_bps / sla.f_req_bps;
    }
    return 0.0;
}

namespace detail {

// Projects pi onto {mean == 1} intersected with the box [pi_min, pi_max] by
// bisecting on a common additive shift. Requires pi_min <= 1 <= pi_max.
inline void renormalize_mean_one(std::vector<double>& pi, double pi_min, double pi_max) {
    const double n = static_cast<double>(pi.size());
    auto shifted_sum = [&](double t) {
        double s = 0.0;
        for (double v : pi) s += std::clamp(v + t, pi_min, pi_max);
        return s;
    };
    double lo = pi_min - pi_max, hi = pi_max - pi_min;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (shifted_sum(mid) < n)
            lo = mid;
        else
            hi = mid;
    }
    double t = 0.5 * (lo + hi);
    for (double& v : pi) v = std::clamp(v + t, pi_min, pi_max);
}

}  // namespace detail

// pi <- clip(pi + dw, bounds), then renormalized back to mean 1 while staying
// inside the bounds.
inline PriorityWeights apply_weights(const PriorityWeights& priorities, const WeightDelta& delta,
                                     const HealingConfig& cfg) {
    if (priorities.pi.size() != delta.dw.size())
        throw contract_error("priority/delta size mismatch");
    for (double d : delta.dw)
        if (std::fabs(d) > delta.delta_max + 1e-12)
            throw contract_error("weight delta exceeds bound");
    PriorityWeights out;
    out.pi.reserve(priorities.pi.size());
    for (std::size_t s = 0; s < priorities.pi.size(); ++s)
        out.pi.push_back(std::clamp(priorities.pi[s] + delta.dw[s], cfg.pi_min, cfg.pi_max));
    detail::renormalize_mean_one(out.pi, cfg.pi_min, cfg.pi_max);
    return out;
}

}  // namespace ranslice
