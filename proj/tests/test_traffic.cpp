#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ranslice/traffic.hpp"

using namespace ranslice;

TEST_CASE("zero arrival rate yields zero bits") {
    TrafficProfile p;
    p.mean_arrival_bps = 0.0;
    Rng rng = make_rng(1);
    for (int i = 0; i < 100; ++i) REQUIRE(generate_arrivals(p, rng, 0.25e-3) == 0.0);
}

TEST_CASE("arrival mean matches the configured rate") {
    TrafficProfile p;
    p.mean_arrival_bps = 4e6;
    p.packet_size_bits = 1000.0;
    const double tti = 0.25e-3;
    Rng rng = make_rng(7);
    double total = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) total += generate_arrivals(p, rng, tti);
    double mean = total / draws;
    double expect = p.mean_arrival_bps * tti;
    REQUIRE(std::fabs(mean - expect) / expect < 0.01);
}

TEST_CASE("arrivals beyond capacity are dropped and counted") {
    UeBuffer buf(10000.0);
    double accepted = buf.push_arrivals(25000.0, 0);
    REQUIRE(accepted == 10000.0);
    REQUIRE(buf.occupancy_bits() == 10000.0);
    REQUIRE(buf.dropped_window_bits() == 15000.0);
    REQUIRE(buf.arrivals_window_bits() == 25000.0);
    REQUIRE(buf.loss_rate() == Catch::Approx(0.6));
}

TEST_CASE("serve drains min(rate*tti, occupancy)") {
    const double tti = 0.25e-3;

    SECTION("rate limited") {
        UeBuffer buf(2e6);
        buf.push_arrivals(1e6, 0);
        auto res = serve_buffer(buf, 1e8, tti);
        REQUIRE(res.served_bits == Catch::Approx(2.5e4));
        REQUIRE(res.effective_rate_bps == Catch::Approx(1e8));
        REQUIRE(buf.occupancy_bits() == Catch::Approx(1e6 - 2.5e4));
    }
    SECTION("buffer limited") {
        UeBuffer buf(2e6);
        buf.push_arrivals(1e4, 0);
        auto res = serve_buffer(buf, 1e8, tti);
        REQUIRE(res.served_bits == Catch::Approx(1e4));
        REQUIRE(res.effective_rate_bps == Catch::Approx(4e7));
        REQUIRE(buf.occupancy_bits() == 0.0);
    }
    SECTION("empty buffer") {
        UeBuffer buf(2e6);
        auto res = serve_buffer(buf, 1e8, tti);
        REQUIRE(res.served_bits == 0.0);
        REQUIRE(res.effective_rate_bps == 0.0);
    }
}

TEST_CASE("bit conservation per tti") {
    // arrivals == served + dropped + delta occupancy, across random sequences
    Rng rng = make_rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        UeBuffer buf(uniform(rng, 1e4, 1e6));
        double arrivals = 0.0, served = 0.0;
        for (int n = 0; n < 100; ++n) {
            double occ_before = buf.occupancy_bits();
            double in_bits = std::floor(uniform(rng, 0.0, 5e4));
            double arrivals_before = buf.arrivals_window_bits();
            double dropped_before = buf.dropped_window_bits();
            buf.push_arrivals(in_bits, n);
            double out = buf.serve(uniform(rng, 0.0, 2e8), 0.25e-3);
            double d_arr = buf.arrivals_window_bits() - arrivals_before;
            double d_drop = buf.dropped_window_bits() - dropped_before;
            double d_occ = buf.occupancy_bits() - occ_before;
            REQUIRE(d_arr == Catch::Approx(out + d_drop + d_occ).margin(1e-6));
            arrivals += d_arr;
            served += out;
        }
        REQUIRE(arrivals ==
                Catch::Approx(served + buf.dropped_window_bits() + buf.occupancy_bits()).margin(1e-6));
    }
}

TEST_CASE("served bits never exceed the service budget") {
    Rng rng = make_rng(13);
    UeBuffer buf(1e6);
    for (int n = 0; n < 500; ++n) {
        buf.push_arrivals(std::floor(uniform(rng, 0.0, 2e4)), n);
        double rate = uniform(rng, 0.0, 1e8);
        double served = buf.serve(rate, 0.25e-3);
        REQUIRE(served <= rate * 0.25e-3 + 1e-9);
    }
}

TEST_CASE("head of line age tracks the oldest queued bits") {
    const double tti = 1e-3;
    UeBuffer buf(1e6);
    REQUIRE(buf.hol_age_s(5, tti) == 0.0);
    buf.push_arrivals(1000.0, 2);
    buf.push_arrivals(500.0, 4);
    REQUIRE(buf.hol_age_s(6, tti) == Catch::Approx(4e-3));
    // draining the first chunk moves the head to the second arrival
    buf.serve(1000.0 / tti, tti);
    REQUIRE(buf.hol_age_s(6, tti) == Catch::Approx(2e-3));
    // hypothetical drain without mutation
    REQUIRE(buf.hol_age_given_drain(0.0, 6, tti) == Catch::Approx(2e-3));
    REQUIRE(buf.hol_age_given_drain(500.0, 6, tti) == 0.0);
}

TEST_CASE("loss window rolls over") {
    UeBuffer buf(1000.0);
    buf.push_arrivals(2000.0, 0);  // half dropped
    REQUIRE(buf.loss_rate() == Catch::Approx(0.5));
    buf.roll_window();
    REQUIRE(buf.arrivals_window_bits() == 0.0);
    REQUIRE(buf.loss_rate() == Catch::Approx(0.5));  // carries last window until new arrivals
    buf.serve(1e7, 1.0);
    buf.push_arrivals(100.0, 1);
    REQUIRE(buf.loss_rate() == 0.0);
}

TEST_CASE("be toggling flips roughly half the users on period boundaries") {
    TrafficProfile p;
    p.kind = SliceKind::be;
    p.be_toggle_period = 10;
    Rng rng = make_rng(21);

    std::vector<bool> flags(200, true);
    auto before = flags;
    toggle_be_users(5, p, rng, flags);  // not a boundary
    REQUIRE(flags == before);

    int flips = 0, events = 0;
    for (int n = 10; n <= 1000; n += 10) {
        before = flags;
        toggle_be_users(n, p, rng, flags);
        for (std::size_t i = 0; i < flags.size(); ++i) {
            ++events;
            if (flags[i] != before[i]) ++flips;
        }
    }
    double freq = static_cast<double>(flips) / events;
    REQUIRE(freq == Catch::Approx(0.5).margin(0.02));
}

TEST_CASE("non-be profiles never toggle") {
    TrafficProfile p;
    p.kind = SliceKind::embb;
    p.be_toggle_period = 1;
    Rng rng = make_rng(3);
    std::vector<bool> flags(10, true);
    for (int n = 0; n < 50; ++n) toggle_be_users(n, p, rng, flags);
    for (bool f : flags) REQUIRE(f);
}
