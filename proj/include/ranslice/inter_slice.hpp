#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "ranslice/errors.hpp"
#include "ranslice/metrics.hpp"
#include "ranslice/sla.hpp"

namespace ranslice {

// One way to split R RBGs across S slices; counts sum to R.
struct RbgCombination {
    std::vector<int> counts;

    int total() const {
        int t = 0;
        for (int c : counts) t += c;
        return t;
    }
};

// Multiplicative slice priorities adjusted by the self-healing agent.
// All ones reduces the action mapping to its unweighted form.
struct PriorityWeights {
    std::vector<double> pi;

    static PriorityWeights ones(int num_slices) {
        PriorityWeights w;
        w.pi.assign(static_cast<std::size_t>(num_slices), 1.0);
        return w;
    }

    double mean() const {
        if (pi.empty()) return 0.0;
        double s = 0.0;
        for (double v : pi) s += v;
        return s / static_cast<double>(pi.size());
    }
};

// Normalization constants mapping raw KPI values into [0,1] observations.
struct ObservationScales {
    double throughput_bps = 300e6;
    double latency_s = 100e-3;
    double occupancy_bits = 20e6;
    double loss = 1.0;
};

// Concatenated [intent vector, metric vector] per slice, fixed slice order.
struct InterObservation {
    std::vector<double> values;
    std::vector<std::size_t> slice_offsets;  // start index of each slice block
};

namespace detail {

inline double clamp01_obs(double v) { return std::min(1.0, std::max(0.0, v)); }

inline void append_intent_vector(const SliceSla& sla, const ObservationScales& sc,
                                 std::vector<double>& out) {
    if (sla.kind == SliceKind::be) {
        out.push_back(clamp01_obs(sla.g_req_bps / sc.throughput_bps));
        out.push_back(clamp01_obs(sla.f_req_bps / sc.throughput_bps));
    } else {
        out.push_back(clamp01_obs(sla.r_req_bps / sc.throughput_bps));
        out.push_back(clamp01_obs(sla.l_req_s / sc.latency_s));
        out.push_back(clamp01_obs(sla.p_req / sc.loss));
    }
}

inline void append_metric_vector(const SliceKpis& kpis, const ObservationScales& sc,
                                 std::vector<double>& out) {
    out.push_back(clamp01_obs(kpis.throughput_bps / sc.throughput_bps));
    out.push_back(clamp01_obs(kpis.occupancy_bits / sc.occupancy_bits));
    out.push_back(clamp01_obs(kpis.loss_rate / sc.loss));
    out.push_back(clamp01_obs(kpis.latency_s / sc.latency_s));
}

}  // namespace detail

inline InterObservation build_observation(std::span<const SliceKpis> kpis,
                                          std::span<const SliceSla> slas,
                                          const ObservationScales& scales = {}) {
    if (kpis.size() != slas.size() || slas.empty())
        throw contract_error("observation needs one kpi aggregate per slice");
    InterObservation obs;
    for (std::size_t s = 0; s < slas.size(); ++s) {
        obs.slice_offsets.push_back(obs.values.size());
        detail::append_intent_vector(slas[s], scales, obs.values);
        detail::append_metric_vector(kpis[s], scales, obs.values);
    }
    return obs;
}

// All length-S nonnegative integer vectors summing to R, lexicographically
// ordered. Count is C(R+S-1, S-1); a cap guards against degenerate configs.
inline std::vector<RbgCombination> enumerate_combinations(int total_rbgs, int num_slices,
                                                          std::size_t cap = 2'000'000) {
    if (total_rbgs < 0) throw contract_error("rbg budget must be >= 0");
    if (num_slices < 1) throw contract_error("need at least one slice");

    long double count = 1.0L;
    for (int i = 1; i < num_slices; ++i)
        count = count * (total_rbgs + i) / i;
    if (count > static_cast<long double>(cap))
        throw config_error("rbg combination count exceeds cap; use a coarser rbg granularity");

    std::vector<RbgCombination> combos;
    combos.reserve(static_cast<std::size_t>(count));
    std::vector<int> cur(static_cast<std::size_t>(num_slices), 0);
    // depth-first in lexicographic order
    std::function<void(int, int)> rec = [&](int idx, int remaining) {
        if (idx == num_slices - 1) {
            cur[static_cast<std::size_t>(idx)] = remaining;
            combos.push_back({cur});
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[static_cast<std::size_t>(idx)] = v;
            rec(idx + 1, remaining - v);
        }
    };
    rec(0, total_rbgs);
    return combos;
}

struct MappedAction {
    std::size_t index = 0;
    RbgCombination combination;
    std::vector<double> target;  // real-valued RBG target before rounding
};

// Maps a continuous action in [-1,1]^S to the nearest RBG combination.
// target_s = R * pi_s (a_s + 1) / sum_i pi_i (a_i + 1); ties go to the
// lexicographically smallest option. An all -1 action falls back to the
// equal-split target R/S.
inline MappedAction map_action(std::span<const double> action, int total_rbgs,
                               const std::vector<RbgCombination>& options,
                               const PriorityWeights& priorities) {
    const std::size_t S = action.size();
    if (options.empty()) throw contract_error("empty combination list");
    if (priorities.pi.size() != S) throw contract_error("priority vector size mismatch");
    for (double a : action)
        if (!(a >= -1.0 && a <= 1.0)) throw contract_error("action components must lie in [-1,1]");

    std::vector<double> target(S, 0.0);
    double denom = 0.0;
    for (std::size_t s = 0; s < S; ++s) denom += priorities.pi[s] * (action[s] + 1.0);
    if (denom <= 0.0) {
        for (std::size_t s = 0; s < S; ++s)
            target[s] = static_cast<double>(total_rbgs) / static_cast<double>(S);
    } else {
        for (std::size_t s = 0; s < S; ++s)
            target[s] = total_rbgs * priorities.pi[s] * (action[s] + 1.0) / denom;
    }

    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < options.size(); ++i) {
        const auto& counts = options[i].counts;
        if (counts.size() != S) throw contract_error("combination width mismatch");
        double d2 = 0.0;
        for (std::size_t s = 0; s < S; ++s) {
            double diff = counts[s] - target[s];
            d2 += diff * diff;
        }
        if (d2 < best_d2) {  // strict: first (lexicographically lowest) option wins ties
            best_d2 = d2;
            best = i;
        }
    }
    return {best, options[best], target};
}

struct InterRewardBreakdown {
    double total = 0.0;
    std::vector<double> per_slice;                    // each <= 0
    std::vector<ComplianceReport> compliance;
};

// RW = sum of per-slice penalties. Each slice contributes the negated,
// weighted sum of its normalized intent shortfalls, so the reward is zero
// exactly when every intent is met.
inline InterRewardBreakdown inter_reward(std::span<const SliceKpis> kpis,
                                         std::span<const SliceSla> slas) {
    if (kpis.size() != slas.size()) throw contract_error("kpi/sla span size mismatch");
    InterRewardBreakdown out;
    for (std::size_t s = 0; s < slas.size(); ++s) {
        ComplianceReport rep = evaluate_compliance(slas[s], kpis[s]);
        double penalty = 0.0;
        const SliceSla& sla = slas[s];
        for (const auto& ic : rep.intents) {
            double w = 1.0;
            switch (ic.intent) {
                case IntentKind::throughput: w = sla.w_r; break;
                case IntentKind::latency: w = sla.w_l; break;
                case IntentKind::loss: w = sla.w_p; break;
                case IntentKind::longterm_throughput: w = sla.w_g; break;
                case IntentKind::fifth_percentile: w = sla.w_f; break;
            }
            penalty += w * ic.violation;
        }
        out.per_slice.push_back(-penalty);
        out.total -= penalty;
        out.compliance.push_back(std::move(rep));
    }
    return out;
}

// Largest-remainder apportionment of R by the given ratio.
inline std::vector<int> apportion_rbgs(std::span<const double> ratio, int total_rbgs) {
    double sum = 0.0;
    for (double r : ratio) {
        if (r < 0.0) throw contract_error("ratio entries must be >= 0");
        sum += r;
    }
    std::vector<int> counts(ratio.size(), 0);
    if (sum <= 0.0) {
        // degenerate: equal split
        for (std::size_t s = 0; s < ratio.size(); ++s)
            counts[s] = total_rbgs / static_cast<int>(ratio.size());
    } else {
        std::vector<double> exact(ratio.size());
        int assigned = 0;
        for (std::size_t s = 0; s < ratio.size(); ++s) {
            exact[s] = total_rbgs * ratio[s] / sum;
            counts[s] = static_cast<int>(std::floor(exact[s]));
            assigned += counts[s];
        }
        while (assigned < total_rbgs) {
            std::size_t best = 0;
            double best_frac = -1.0;
            for (std::size_t s = 0; s < ratio.size(); ++s) {
                double frac = exact[s] - counts[s];
                if (frac > best_frac + 1e-12) {
                    best_frac = frac;
                    best = s;
                }
            }
            ++counts[best];
            ++assigned;
        }
    }
    return counts;
}

// Inverts a desired integer split into an action vector whose mapped
// combination reproduces the split exactly (at unit priorities).
inline std::vector<double> action_from_counts(std::span<const int> counts) {
    int max_c = 0;
    for (int c : counts) max_c = std::max(max_c, c);
    std::vector<double> a(counts.size(), -1.0);
    if (max_c == 0) return a;  // all zero: callers fall back to equal split
    for (std::size_t s = 0; s < counts.size(); ++s)
        a[s] = 2.0 * static_cast<double>(counts[s]) / max_c - 1.0;
    return a;
}

// Static weighted split; the non-adaptive scheduling baseline.
inline std::vector<double> rule_based_policy(std::span<const double> ratio, int total_rbgs) {
    std::vector<int> counts = apportion_rbgs(ratio, total_rbgs);
    return action_from_counts(counts);
}

struct IntentAwareConfig {
    double violation_gain = 2.0;
    double occupancy_gain = 1.0;
};

// Demand-driven heuristic: slices under violation or queue pressure bid for a
// larger share. Priorities are applied later, inside the action mapping.
inline std::vector<double> intent_aware_policy(std::span<const ComplianceReport> compliance,
                                               std::span<const SliceKpis> kpis,
                                               const ObservationScales& scales,
                                               const IntentAwareConfig& cfg = {}) {
    if (compliance.size() != kpis.size() || kpis.empty())
        throw contract_error("intent aware policy needs per-slice compliance and kpis");
    std::vector<double> score(kpis.size(), 0.0);
    double max_score = 0.0;
    for (std::size_t s = 0; s < kpis.size(); ++s) {
        double occ = detail::clamp01_obs(kpis[s].occupancy_bits / scales.occupancy_bits);
        score[s] = 1.0 + cfg.violation_gain * compliance[s].total_violation() +
                   cfg.occupancy_gain * occ;
        max_score = std::max(max_score, score[s]);
    }
    std::vector<double> a(kpis.size(), 0.0);
    for (std::size_t s = 0; s < kpis.size(); ++s)
        a[s] = 2.0 * score[s] / max_score - 1.0;
    return a;
}

}  // namespace ranslice
