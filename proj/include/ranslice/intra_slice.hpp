#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "ranslice/errors.hpp"
#include "ranslice/sla.hpp"
#include "ranslice/traffic.hpp"

namespace ranslice {

// Working copy of one slice's UEs for the micro-step loop. Queue drain is
// predicted per assigned RBG; the real buffers are only touched after the
// loop, when the TTI's service is applied.
struct IntraUe {
    int ue_index = 0;
    const UeBuffer* buffer = nullptr;
    double se = 0.0;
    double per_rbg_bits = 0.0;   // (1/R) * B * se * tti
    double queue_bits = 0.0;
    double hol_age_s = 0.0;
    double served_bits = 0.0;
    int rbg_count = 0;
    double fifth_pct_bps = 0.0;  // windowed per-UE fifth percentile
};

struct SliceProcessState {
    SliceKind kind = SliceKind::embb;
    std::vector<IntraUe> ues;
    int now_step = 0;
    double tti_s = 0.25e-3;
    double l_max_s = 100e-3;
    double buffer_cap_bits = 2e6;
    double served_max_bits = 1.0;  // b_max = B * se_max * tti
    double se_max = 8.0;
};

// Per-micro-step state: normalized queues, channel qualities, head-of-line
// delays, service shares and within-TTI served bits, plus the RBG budget.
struct MicroState {
    SliceKind kind = SliceKind::embb;
    std::vector<double> queue;   // q
    std::vector<double> channel; // c
    std::vector<double> hol;     // l, meaningful for URLLC
    std::vector<double> share;   // u, meaningful for eMBB/BE
    std::vector<double> served;  // within-TTI served bits / b_max
    int budget = 0;

    double mean_share() const {
        if (share.empty()) return 0.0;
        double s = 0.0;
        for (double v : share) s += v;
        return s / static_cast<double>(share.size());
    }

    // Observation layout: URLLC exposes (q, c, l, budget); eMBB/BE (q, c, u, budget).
    std::vector<double> observation(int total_rbgs) const {
        std::vector<double> v;
        v.insert(v.end(), queue.begin(), queue.end());
        v.insert(v.end(), channel.begin(), channel.end());
        if (kind == SliceKind::urllc)
            v.insert(v.end(), hol.begin(), hol.end());
        else
            v.insert(v.end(), share.begin(), share.end());
        v.push_back(total_rbgs > 0 ? static_cast<double>(budget) / total_rbgs : 0.0);
        return v;
    }
};

namespace detail {
inline double clamp01_intra(double v) { return std::min(1.0, std::max(0.0, v)); }
}  // namespace detail

inline MicroState build_microstate(const SliceProcessState& st, int slice_rbgs, int micro_index) {
    if (slice_rbgs < 1) throw contract_error("micro state needs a positive rbg budget");
    if (micro_index < 1 || micro_index > slice_rbgs)
        throw contract_error("micro index out of range");
    MicroState ms;
    ms.kind = st.kind;
    ms.budget = slice_rbgs;
    ms.queue.reserve(st.ues.size());
    for (const IntraUe& ue : st.ues) {
        ms.queue.push_back(detail::clamp01_intra(ue.queue_bits / st.buffer_cap_bits));
        ms.channel.push_back(detail::clamp01_intra(ue.se / st.se_max));
        ms.hol.push_back(detail::clamp01_intra(ue.hol_age_s / st.l_max_s));
        ms.share.push_back(detail::clamp01_intra(static_cast<double>(ue.rbg_count) / slice_rbgs));
        ms.served.push_back(detail::clamp01_intra(ue.served_bits / st.served_max_bits));
    }
    return ms;
}

// URLLC: 1 - 2*l_j; eMBB: 2*b_j - 1; BE: 1 - 2*|u_j - mean(u)|. All in [-1,1].
inline double micro_reward(SliceKind kind, int chosen, const MicroState& after) {
    if (chosen < 0 || chosen >= static_cast<int>(after.queue.size()))
        throw contract_error("chosen ue index out of range");
    std::size_t j = static_cast<std::size_t>(chosen);
    switch (kind) {
        case SliceKind::urllc: return 1.0 - 2.0 * after.hol[j];
        case SliceKind::embb: return 2.0 * after.served[j] - 1.0;
        case SliceKind::be: return 1.0 - 2.0 * std::fabs(after.share[j] - after.mean_share());
    }
    return 0.0;
}

using IntraPolicy = std::function<int(const MicroState&)>;

// Heuristic stand-ins for the per-slice schedulers. Ties break toward the
// lowest UE index.
inline IntraPolicy baseline_policy(SliceKind kind) {
    switch (kind) {
        case SliceKind::urllc:
            // earliest deadline first: largest head-of-line delay
            return [](const MicroState& ms) {
                int best = 0;
                for (int j = 1; j < static_cast<int>(ms.hol.size()); ++j)
                    if (ms.hol[static_cast<std::size_t>(j)] > ms.hol[static_cast<std::size_t>(best)])
                        best = j;
                return best;
            };
        case SliceKind::embb:
            // largest expected service: channel * queue
            return [](const MicroState& ms) {
                int best = 0;
                double best_key = ms.channel.empty() ? 0.0 : ms.channel[0] * ms.queue[0];
                for (int j = 1; j < static_cast<int>(ms.queue.size()); ++j) {
                    double key = ms.channel[static_cast<std::size_t>(j)] * ms.queue[static_cast<std::size_t>(j)];
                    if (key > best_key) {
                        best_key = key;
                        best = j;
                    }
                }
                return best;
            };
        case SliceKind::be:
            // fair catch-up: smallest service share
            return [](const MicroState& ms) {
                int best = 0;
                for (int j = 1; j < static_cast<int>(ms.share.size()); ++j)
                    if (ms.share[static_cast<std::size_t>(j)] < ms.share[static_cast<std::size_t>(best)])
                        best = j;
                return best;
            };
    }
    throw contract_error("unknown slice kind");
}

// Variant engaged through the orchestration knob: BE favors the UE with the
// worst windowed fifth percentile instead of the plain share catch-up.
inline IntraPolicy edge_boost_policy(const SliceProcessState& st) {
    if (st.kind != SliceKind::be) return baseline_policy(st.kind);
    std::vector<double> edge;
    edge.reserve(st.ues.size());
    for (const IntraUe& ue : st.ues) edge.push_back(ue.fifth_pct_bps);
    return [edge](const MicroState&) {
        int best = 0;
        for (int j = 1; j < static_cast<int>(edge.size()); ++j)
            if (edge[static_cast<std::size_t>(j)] < edge[static_cast<std::size_t>(best)]) best = j;
        return best;
    };
}

struct MicroResult {
    std::vector<int> chosen;          // UE per micro-step
    std::vector<double> rewards;      // per micro-step, in [-1,1]
    std::vector<int> rbg_per_ue;
    int unused_rbgs = 0;              // nonzero only when the slice is empty
};

// Runs kappa = 1..R_s micro-steps, one RBG per step, updating predicted
// queue, delay and share statistics after every assignment.
inline MicroResult run_microsteps(SliceProcessState& st, int slice_rbgs, const IntraPolicy& policy) {
    if (slice_rbgs < 0) throw contract_error("negative rbg budget");
    MicroResult res;
    res.rbg_per_ue.assign(st.ues.size(), 0);
    if (slice_rbgs == 0) return res;
    if (st.ues.empty()) {
        res.unused_rbgs = slice_rbgs;
        return res;
    }

    for (int kappa = 1; kappa <= slice_rbgs; ++kappa) {
        MicroState before = build_microstate(st, slice_rbgs, kappa);
        int j = policy(before);
        if (j < 0 || j >= static_cast<int>(st.ues.size()))
            throw contract_error("intra policy chose an out-of-range ue");
        IntraUe& ue = st.ues[static_cast<std::size_t>(j)];
        ue.rbg_count += 1;
        res.rbg_per_ue[static_cast<std::size_t>(j)] += 1;

        double delivered = std::min(ue.per_rbg_bits, ue.queue_bits);
        ue.served_bits += delivered;
        ue.queue_bits = std::max(0.0, ue.queue_bits - delivered);
        if (ue.buffer != nullptr) {
            ue.hol_age_s = (ue.queue_bits <= 0.0)
                               ? 0.0
                               : ue.buffer->hol_age_given_drain(ue.served_bits, st.now_step, st.tti_s);
        } else if (ue.queue_bits <= 0.0) {
            ue.hol_age_s = 0.0;
        }

        MicroState after = build_microstate(st, slice_rbgs, kappa);
        res.chosen.push_back(j);
        res.rewards.push_back(micro_reward(st.kind, j, after));
    }
    return res;
}

}  // namespace ranslice
