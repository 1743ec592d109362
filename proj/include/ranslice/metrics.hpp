#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "ranslice/errors.hpp"

namespace ranslice {

// Sliding window of served-throughput samples per UE. Holds the last m values
// of r_u and derives the long-term mean and the nearest-rank fifth percentile.
class KpiWindow {
public:
    explicit KpiWindow(int window_len = 100) : m_(window_len) {
        if (window_len < 1) throw config_error("kpi window length must be >= 1");
        ring_.resize(static_cast<std::size_t>(window_len), 0.0);
    }

    void push(double sample) {
        ring_[head_] = sample;
        head_ = (head_ + 1) % ring_.size();
        if (count_ < ring_.size()) ++count_;
    }

    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }
    int window_len() const { return m_; }

    // Oldest-to-newest copy of the stored samples.
    std::vector<double> samples() const {
        std::vector<double> out;
        out.reserve(count_);
        std::size_t start = (count_ < ring_.size()) ? 0 : head_;
        for (std::size_t i = 0; i < count_; ++i) out.push_back(ring_[(start + i) % ring_.size()]);
        return out;
    }

    // Mean over the stored samples, summed oldest to newest.
    double mean() const {
        if (count_ == 0) throw contract_error("mean of empty kpi window");
        double sum = 0.0;
        std::size_t start = (count_ < ring_.size()) ? 0 : head_;
        for (std::size_t i = 0; i < count_; ++i) sum += ring_[(start + i) % ring_.size()];
        return sum / static_cast<double>(count_);
    }

    // Nearest-rank percentile: k = ceil(0.05 * n), k-th smallest sample.
    double fifth_percentile() const {
        if (count_ == 0) throw contract_error("percentile of empty kpi window");
        std::vector<double> tmp = samples();
        std::size_t k = (5 * count_ + 99) / 100;  // integer ceil(0.05 n), k >= 1
        std::nth_element(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(k - 1), tmp.end());
        return tmp[k - 1];
    }

private:
    int m_;
    std::vector<double> ring_;
    std::size_t head_ = 0;
    std::size_t count_ = 0;
};

// Per-slice KPI aggregate for one step. throughput_bps is the windowed
// aggregate served throughput (sum of per-UE long-term means); fifth_pct_bps
// averages the per-UE fifth percentiles, tracking cell-edge experience.
struct SliceKpis {
    double throughput_bps = 0.0;
    double latency_s = 0.0;        // mean of per-UE buffer latencies
    double loss_rate = 0.0;        // windowed dropped / arrived bits
    double fifth_pct_bps = 0.0;
    double occupancy_bits = 0.0;   // summed buffer occupancy
};

// r_u = (R_s^u / R) * B * SE
inline double instantaneous_throughput(int ue_rbgs, int total_rbgs, double bandwidth_hz, double se) {
    if (total_rbgs <= 0) throw contract_error("total rbg count must be positive");
    if (ue_rbgs < 0 || ue_rbgs > total_rbgs) throw contract_error("ue rbg count out of range");
    return (static_cast<double>(ue_rbgs) / static_cast<double>(total_rbgs)) * bandwidth_hz * se;
}

// l_u = b_u / r_eff, clamped to l_max. Empty buffer reads as zero latency and
// a starved nonempty buffer as l_max so downstream rewards stay bounded.
inline double buffer_latency(double occupancy_bits, double effective_rate_bps, double l_max_s) {
    if (occupancy_bits <= 0.0) return 0.0;
    if (effective_rate_bps <= 0.0) return l_max_s;
    return std::min(occupancy_bits / effective_rate_bps, l_max_s);
}

inline double longterm_throughput(const KpiWindow& window) { return window.mean(); }

inline double fifth_percentile(const KpiWindow& window) { return window.fifth_percentile(); }

}  // namespace ranslice
