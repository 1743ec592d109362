#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ranslice/intra_slice.hpp"
#include "ranslice/rng.hpp"

using namespace ranslice;

namespace {

SliceProcessState make_state(SliceKind kind, int num_ue) {
    SliceProcessState st;
    st.kind = kind;
    st.now_step = 10;
    st.tti_s = 0.25e-3;
    st.l_max_s = 100e-3;
    st.buffer_cap_bits = 2e6;
    st.se_max = 8.0;
    st.served_max_bits = 100e6 * 8.0 * 0.25e-3;
    st.ues.resize(static_cast<std::size_t>(num_ue));
    for (int j = 0; j < num_ue; ++j) {
        IntraUe& ue = st.ues[static_cast<std::size_t>(j)];
        ue.ue_index = j;
        ue.se = 4.0;
        ue.per_rbg_bits = 100e6 / 16.0 * ue.se * st.tti_s;
        ue.queue_bits = 5e5;
    }
    return st;
}

}  // namespace

TEST_CASE("microstate observation layout per kind") {
    auto urllc = make_state(SliceKind::urllc, 3);
    auto ms = build_microstate(urllc, 4, 1);
    // urllc: (q, c, l, budget)
    auto obs = ms.observation(16);
    REQUIRE(obs.size() == 3 * 3 + 1);
    REQUIRE(obs.back() == Catch::Approx(4.0 / 16.0));

    auto embb = make_state(SliceKind::embb, 3);
    auto ms2 = build_microstate(embb, 4, 1);
    auto obs2 = ms2.observation(16);
    REQUIRE(obs2.size() == 3 * 3 + 1);  // (q, c, u, budget)
    // service shares start at zero
    for (std::size_t i = 6; i < 9; ++i) REQUIRE(obs2[i] == 0.0);
}

TEST_CASE("microstate normalizations clamp to the unit interval") {
    auto st = make_state(SliceKind::urllc, 2);
    st.ues[0].queue_bits = 5e6;   // above capacity
    st.ues[0].hol_age_s = 1.0;    // above l_max
    st.ues[1].queue_bits = 0.0;
    auto ms = build_microstate(st, 2, 1);
    REQUIRE(ms.queue[0] == 1.0);
    REQUIRE(ms.hol[0] == 1.0);
    REQUIRE(ms.queue[1] == 0.0);
}

TEST_CASE("micro reward fixtures") {
    auto st = make_state(SliceKind::urllc, 2);
    auto ms = build_microstate(st, 2, 1);

    SECTION("urllc zero delay gives +1") {
        ms.hol = {0.0, 0.5};
        REQUIRE(micro_reward(SliceKind::urllc, 0, ms) == 1.0);
        REQUIRE(micro_reward(SliceKind::urllc, 1, ms) == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("embb served fraction scales linearly") {
        ms.served = {0.75, 0.0};
        REQUIRE(micro_reward(SliceKind::embb, 0, ms) == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(micro_reward(SliceKind::embb, 1, ms) == -1.0);
    }
    SECTION("be perfect fairness gives +1") {
        ms.share = {0.25, 0.25};
        REQUIRE(micro_reward(SliceKind::be, 0, ms) == 1.0);
    }
}

TEST_CASE("micro rewards stay within bounds on random states") {
    Rng rng = make_rng(61);
    for (int trial = 0; trial < 20000; ++trial) {
        MicroState ms;
        ms.kind = static_cast<SliceKind>(trial % 3);
        int n = uniform_int(rng, 1, 6);
        for (int j = 0; j < n; ++j) {
            ms.queue.push_back(uniform(rng));
            ms.channel.push_back(uniform(rng));
            ms.hol.push_back(uniform(rng));
            ms.share.push_back(uniform(rng));
            ms.served.push_back(uniform(rng));
        }
        int j = uniform_int(rng, 0, n - 1);
        double r = micro_reward(ms.kind, j, ms);
        REQUIRE(r >= -1.0);
        REQUIRE(r <= 1.0);
    }
}

TEST_CASE("baseline policies pick by their slice-specific keys") {
    SECTION("urllc earliest deadline first") {
        auto st = make_state(SliceKind::urllc, 3);
        st.ues[0].hol_age_s = 0.1 * st.l_max_s;
        st.ues[1].hol_age_s = 0.9 * st.l_max_s;
        st.ues[2].hol_age_s = 0.5 * st.l_max_s;
        auto ms = build_microstate(st, 1, 1);
        REQUIRE(baseline_policy(SliceKind::urllc)(ms) == 1);
    }
    SECTION("be picks the smallest share with lowest-index ties") {
        MicroState ms;
        ms.kind = SliceKind::be;
        ms.share = {0.5, 0.25, 0.25};
        ms.queue = {1, 1, 1};
        ms.channel = {1, 1, 1};
        ms.hol = {0, 0, 0};
        ms.served = {0, 0, 0};
        REQUIRE(baseline_policy(SliceKind::be)(ms) == 1);
    }
    SECTION("embb all-equal metrics tie to the first ue") {
        auto st = make_state(SliceKind::embb, 3);
        auto ms = build_microstate(st, 1, 1);
        REQUIRE(baseline_policy(SliceKind::embb)(ms) == 0);
    }
}

TEST_CASE("micro loop spends the whole budget on a single ue slice") {
    auto st = make_state(SliceKind::embb, 1);
    auto res = run_microsteps(st, 5, baseline_policy(SliceKind::embb));
    REQUIRE(res.rbg_per_ue == std::vector<int>{5});
    REQUIRE(res.unused_rbgs == 0);
    auto ms = build_microstate(st, 5, 5);
    REQUIRE(ms.share[0] == 1.0);
}

TEST_CASE("zero budget and empty slices degrade gracefully") {
    auto st = make_state(SliceKind::be, 2);
    auto res0 = run_microsteps(st, 0, baseline_policy(SliceKind::be));
    REQUIRE(res0.chosen.empty());

    SliceProcessState empty = make_state(SliceKind::be, 0);
    auto res1 = run_microsteps(empty, 4, baseline_policy(SliceKind::be));
    REQUIRE(res1.unused_rbgs == 4);
}

TEST_CASE("greedy edf rotates across ues as queues drain") {
    // three ues with distinct delays; serving the max-delay ue drains its
    // queue, so the pick moves to the next-largest delay
    auto st = make_state(SliceKind::urllc, 3);
    UeBuffer b0(2e6), b1(2e6), b2(2e6);
    b0.push_arrivals(1000.0, 8);
    b1.push_arrivals(1000.0, 2);  // oldest
    b2.push_arrivals(1000.0, 5);
    st.ues[0].buffer = &b0;
    st.ues[1].buffer = &b1;
    st.ues[2].buffer = &b2;
    for (int j = 0; j < 3; ++j) {
        auto& ue = st.ues[static_cast<std::size_t>(j)];
        ue.queue_bits = 1000.0;
        ue.hol_age_s = ue.buffer->hol_age_s(st.now_step, st.tti_s);
        ue.per_rbg_bits = 1500.0;  // one rbg clears a queue
    }
    auto res = run_microsteps(st, 3, baseline_policy(SliceKind::urllc));
    REQUIRE(res.chosen == std::vector<int>{1, 2, 0});
}

TEST_CASE("service shares sum to one after the final micro step") {
    Rng rng = make_rng(67);
    for (int trial = 0; trial < 200; ++trial) {
        int n = uniform_int(rng, 1, 8);
        int budget = uniform_int(rng, 1, 16);
        auto st = make_state(static_cast<SliceKind>(trial % 3), n);
        for (auto& ue : st.ues) ue.queue_bits = uniform(rng, 0.0, 1e6);
        auto res = run_microsteps(st, budget, baseline_policy(st.kind));
        int total = 0;
        for (int c : res.rbg_per_ue) total += c;
        REQUIRE(total == budget);
        double share_sum = 0.0;
        for (const auto& ue : st.ues) share_sum += static_cast<double>(ue.rbg_count) / budget;
        REQUIRE(share_sum == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("be baseline keeps shares within one rbg of the mean") {
    for (int budget : {4, 8, 16}) {
        auto st = make_state(SliceKind::be, 4);
        auto res = run_microsteps(st, budget, baseline_policy(SliceKind::be));
        double mean = static_cast<double>(budget) / 4.0;
        for (int c : res.rbg_per_ue)
            REQUIRE(std::fabs(c - mean) <= 1.0 + 1e-12);
        // normalized form of the same bound
        for (int c : res.rbg_per_ue)
            REQUIRE(std::fabs(static_cast<double>(c) / budget - 0.25) <= 1.0 / budget + 1e-12);
        REQUIRE(res.rewards.back() >= 0.0);
    }
}
