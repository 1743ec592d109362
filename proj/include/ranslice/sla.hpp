#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ranslice/errors.hpp"
#include "ranslice/metrics.hpp"

namespace ranslice {

enum class SliceKind { embb = 0, urllc = 1, be = 2 };

inline const char* to_string(SliceKind k) {
    switch (k) {
        case SliceKind::embb: return "embb";
        case SliceKind::urllc: return "urllc";
        case SliceKind::be: return "be";
    }
    return "?";
}

inline SliceKind slice_kind_from_string(const std::string& s) {
    if (s == "embb" || s == "eMBB" || s == "EMBB") return SliceKind::embb;
    if (s == "urllc" || s == "URLLC") return SliceKind::urllc;
    if (s == "be" || s == "BE") return SliceKind::be;
    throw config_error("unknown slice kind: " + s);
}

// Per-slice QoS intent vector. eMBB/URLLC carry throughput/latency/loss
// targets; BE carries long-term and fifth-percentile throughput floors.
// Weights scale the per-intent shortfall terms in the scheduler reward.
struct SliceSla {
    SliceKind kind = SliceKind::embb;

    double r_req_bps = 150e6;   // aggregate served-throughput floor (embb/urllc)
    double l_req_s = 20e-3;     // average-latency ceiling (embb/urllc)
    double p_req = 0.01;        // packet-loss ceiling, in (0,1) (embb/urllc)

    double g_req_bps = 10e6;    // long-term aggregate throughput floor (be)
    double f_req_bps = 1e6;     // fifth-percentile throughput floor (be)

    double w_r = 1.0, w_l = 1.0, w_p = 1.0;  // embb/urllc intent weights
    double w_g = 1.0, w_f = 1.0;             // be intent weights

    double l_max_s = 100e-3;    // latency clamp and normalization ceiling

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0)) throw config_error(std::string("sla threshold ") + name + " must be > 0");
        };
        if (kind == SliceKind::be) {
            positive(g_req_bps, "g_req");
            positive(f_req_bps, "f_req");
            if (w_g < 0.0 || w_f < 0.0) throw config_error("sla weights must be >= 0");
        } else {
            positive(r_req_bps, "r_req");
            positive(l_req_s, "l_req");
            if (!(p_req > 0.0 && p_req < 1.0)) throw config_error("p_req must lie in (0,1)");
            if (w_r < 0.0 || w_l < 0.0 || w_p < 0.0) throw config_error("sla weights must be >= 0");
        }
        positive(l_max_s, "l_max");
        if (kind != SliceKind::be && !(l_max_s > l_req_s))
            throw config_error("l_max must exceed l_req");
    }
};

enum class IntentKind { throughput, latency, loss, longterm_throughput, fifth_percentile };

inline const char* to_string(IntentKind k) {
    switch (k) {
        case IntentKind::throughput: return "throughput";
        case IntentKind::latency: return "latency";
        case IntentKind::loss: return "loss";
        case IntentKind::longterm_throughput: return "long-term-throughput";
        case IntentKind::fifth_percentile: return "fifth-percentile";
    }
    return "?";
}

struct IntentCompliance {
    IntentKind intent;
    bool satisfied = true;
    double violation = 0.0;  // normalized shortfall in [0,1]; 0 iff satisfied
};

struct ComplianceReport {
    SliceKind kind = SliceKind::embb;
    std::vector<IntentCompliance> intents;

    bool all_satisfied() const {
        for (const auto& i : intents)
            if (!i.satisfied) return false;
        return true;
    }
    double total_violation() const {
        double v = 0.0;
        for (const auto& i : intents) v += i.violation;
        return v;
    }
};

namespace detail {
inline double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }
}  // namespace detail

// Checks each slice intent inequality and reports normalized violation
// magnitudes. The normalizing denominators are the same ones the inter-slice
// reward uses, so report values with unit weights equal the reward brackets.
inline ComplianceReport evaluate_compliance(const SliceSla& sla, const SliceKpis& kpis) {
    ComplianceReport report;
    report.kind = sla.kind;
    auto add = [&report](IntentKind intent, bool ok, double violation) {
        report.intents.push_back({intent, ok, ok ? 0.0 : detail::clamp01(violation)});
    };

    if (sla.kind == SliceKind::be) {
        add(IntentKind::longterm_throughput, kpis.throughput_bps >= sla.g_req_bps,
            (sla.g_req_bps - kpis.throughput_bps) / sla.g_req_bps);
        add(IntentKind::fifth_percentile, kpis.fifth_pct_bps >= sla.f_req_bps,
            (sla.f_req_bps - kpis.fifth_pct_bps) / sla.f_req_bps);
        return report;
    }

    add(IntentKind::throughput, kpis.throughput_bps >= sla.r_req_bps,
        (sla.r_req_bps - kpis.throughput_bps) / sla.r_req_bps);
    add(IntentKind::latency, kpis.latency_s <= sla.l_req_s,
        (kpis.latency_s - sla.l_req_s) / (sla.l_max_s - sla.l_req_s));
    add(IntentKind::loss, kpis.loss_rate <= sla.p_req,
        (kpis.loss_rate - sla.p_req) / (1.0 - sla.p_req));
    return report;
}

}  // namespace ranslice
