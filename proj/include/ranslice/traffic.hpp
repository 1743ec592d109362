#pragma once

#include <algorithm>
#include <deque>
#include <vector>

#include "ranslice/errors.hpp"
#include "ranslice/rng.hpp"
#include "ranslice/sla.hpp"

namespace ranslice {

struct TrafficProfile {
    SliceKind kind = SliceKind::embb;
    double mean_arrival_bps = 10e6;
    double packet_size_bits = 4096.0;
    int be_toggle_period = 50;  // n_be

    void validate() const {
        if (mean_arrival_bps < 0.0) throw config_error("mean arrival rate must be >= 0");
        if (!(packet_size_bits > 0.0)) throw config_error("packet size must be > 0");
        if (kind == SliceKind::be && be_toggle_period < 1)
            throw config_error("be toggle period must be >= 1");
    }
};

// Finite FIFO buffer per UE. Arrivals beyond capacity are dropped at the tail
// and counted against the current loss window. Windows are tumbling: counters
// grow monotonically until roll_window() resets them.
class UeBuffer {
public:
    struct Chunk {
        double bits;
        int arrival_step;
    };

    explicit UeBuffer(double capacity_bits = 2e6) : capacity_(capacity_bits) {
        if (!(capacity_bits > 0.0)) throw config_error("buffer capacity must be > 0");
    }

    double capacity_bits() const { return capacity_; }
    double occupancy_bits() const { return occupancy_; }
    double arrivals_window_bits() const { return arrivals_window_; }
    double dropped_window_bits() const { return dropped_window_; }

    // Appends bits arriving at `step`; overflow is dropped and counted.
    // Returns the accepted bit count.
    double push_arrivals(double bits, int step) {
        if (bits <= 0.0) return 0.0;
        arrivals_window_ += bits;
        double free_bits = capacity_ - occupancy_;
        double accepted = std::min(bits, std::max(0.0, free_bits));
        double dropped = bits - accepted;
        dropped_window_ += dropped;
        if (accepted > 0.0) {
            fifo_.push_back({accepted, step});
            occupancy_ += accepted;
        }
        return accepted;
    }

    // Serves min(rate * tti, occupancy) bits from the head of the queue.
    double serve(double rate_bps, double tti_s) {
        if (rate_bps < 0.0) throw contract_error("service rate must be >= 0");
        double target = rate_bps * tti_s;
        double served = std::min(target, occupancy_);
        double remaining = served;
        while (remaining > 0.0 && !fifo_.empty()) {
            Chunk& head = fifo_.front();
            if (head.bits <= remaining) {
                remaining -= head.bits;
                fifo_.pop_front();
            } else {
                head.bits -= remaining;
                remaining = 0.0;
            }
        }
        occupancy_ = std::max(0.0, occupancy_ - served);
        if (fifo_.empty()) occupancy_ = 0.0;
        return served;
    }

    // Age of the oldest queued bit, zero when empty.
    double hol_age_s(int now_step, double tti_s) const {
        if (fifo_.empty()) return 0.0;
        return (now_step - fifo_.front().arrival_step) * tti_s;
    }

    // Head-of-line age assuming `drained_bits` have already left the queue.
    // Lets the intra-slice micro loop track delay as assignments accumulate
    // without copying the FIFO.
    double hol_age_given_drain(double drained_bits, int now_step, double tti_s) const {
        double skip = drained_bits;
        for (const Chunk& c : fifo_) {
            if (skip < c.bits) return (now_step - c.arrival_step) * tti_s;
            skip -= c.bits;
        }
        return 0.0;
    }

    // dropped/arrived over the current window; carries the last completed
    // window's rate while the new window has no arrivals yet.
    double loss_rate() const {
        if (arrivals_window_ > 0.0) return dropped_window_ / arrivals_window_;
        return last_window_loss_;
    }

    void roll_window() {
        last_window_loss_ = loss_rate();
        arrivals_window_ = 0.0;
        dropped_window_ = 0.0;
    }

private:
    double capacity_;
    std::deque<Chunk> fifo_;
    double occupancy_ = 0.0;
    double arrivals_window_ = 0.0;
    double dropped_window_ = 0.0;
    double last_window_loss_ = 0.0;
};

// Poisson packet arrivals over one TTI, in bits.
inline double generate_arrivals(const TrafficProfile& profile, Rng& rng, double tti_s) {
    if (profile.mean_arrival_bps <= 0.0) return 0.0;
    double mean_packets = profile.mean_arrival_bps * tti_s / profile.packet_size_bits;
    return static_cast<double>(poisson(rng, mean_packets)) * profile.packet_size_bits;
}

// Every n_be steps each BE UE flips its activation with probability 1/2.
// Non-BE callers must not pass their flags here; their UEs stay always-on.
inline void toggle_be_users(int step, const TrafficProfile& profile, Rng& rng,
                            std::vector<bool>& active_flags) {
    if (profile.kind != SliceKind::be) return;
    if (step <= 0 || step % profile.be_toggle_period != 0) return;
    for (std::size_t i = 0; i < active_flags.size(); ++i) {
        if (bernoulli(rng, 0.5)) active_flags[i] = !active_flags[i];
    }
}

struct ServeResult {
    double served_bits = 0.0;
    double effective_rate_bps = 0.0;  // min(r_u, deliverable-per-TTI)/tti
};

// served = min(r_u * tti, occupancy); r_eff = served / tti.
inline ServeResult serve_buffer(UeBuffer& buffer, double rate_bps, double tti_s) {
    ServeResult res;
    res.served_bits = buffer.serve(rate_bps, tti_s);
    res.effective_rate_bps = (tti_s > 0.0) ? res.served_bits / tti_s : 0.0;
    return res;
}

}  // namespace ranslice
