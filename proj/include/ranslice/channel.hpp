#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ranslice/errors.hpp"
#include "ranslice/rng.hpp"

namespace ranslice {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

// Cell grid, UE population and the scalar link-gain channel abstraction.
// All arithmetic below the dB config boundary happens in linear watts.
struct NetworkConfig {
    int num_cells = 7;
    int sectors_per_cell = 3;
    int num_ue = 30;
    int num_slices = 3;
    double bandwidth_hz = 100e6;
    int num_rbg = 16;
    double tti_s = 0.25e-3;        // 60 kHz subcarrier spacing slot
    double carrier_hz = 30e9;
    double noise_power_w = 3.2e-12;
    std::uint64_t seed = 1;

    // Link-gain model: rx power = tx + antenna gain - pathloss(d) - shadow + fade.
    double tx_power_dbm = 35.0;
    double antenna_gain_db = 15.0;
    double interference_rejection_db = 12.0;  // extra attenuation on neighbor links
    double pathloss_exponent = 2.9;
    double shadowing_sigma_db = 6.0;
    double fading_sigma_db = 2.0;
    double ref_distance_m = 1.0;

    double inter_site_m = 200.0;
    double cell_radius_m = 120.0;
    double min_ue_distance_m = 10.0;
    double se_max = 8.0;           // normalization cap for observations

    // Free-space loss at the reference distance, derived from the carrier.
    double ref_pathloss_db() const {
        constexpr double c = 299792458.0;
        return 20.0 * std::log10(4.0 * M_PI * ref_distance_m * carrier_hz / c);
    }

    // Received power at the reference distance with no shadowing or fading.
    double ref_rx_power_dbm() const {
        return tx_power_dbm + antenna_gain_db - ref_pathloss_db();
    }

    void validate() const {
        if (num_cells < 1) throw config_error("num_cells must be >= 1");
        if (sectors_per_cell < 1) throw config_error("sectors_per_cell must be >= 1");
        if (num_ue < 1) throw config_error("num_ue must be >= 1");
        if (num_slices < 1) throw config_error("num_slices must be >= 1");
        if (num_rbg < num_slices) throw config_error("num_rbg must be >= num_slices");
        if (!(bandwidth_hz > 0.0)) throw config_error("bandwidth must be > 0");
        if (!(tti_s > 0.0)) throw config_error("tti must be > 0");
        if (!(carrier_hz > 0.0)) throw config_error("carrier must be > 0");
        if (!(noise_power_w > 0.0)) throw config_error("noise power must be > 0");
        if (!(inter_site_m > 0.0) || !(cell_radius_m > 0.0))
            throw config_error("layout distances must be > 0");
        if (!(min_ue_distance_m >= ref_distance_m))
            throw config_error("min ue distance must be >= reference distance");
        if (!(se_max > 0.0)) throw config_error("se_max must be > 0");
    }
};

// Per (serving cell, UE) channel snapshot for one TTI. SE is flat across RBGs
// within the TTI.
struct LinkState {
    double rsrp_w = 0.0;
    double interference_w = 0.0;
    double se = 0.0;
};

struct CellSite {
    double x = 0.0, y = 0.0;
};

struct UePlacement {
    double x = 0.0, y = 0.0;
    int serving_cell = 0;
    std::vector<double> shadow_db;  // one static draw per cell link
};

struct Topology {
    NetworkConfig cfg;
    std::vector<CellSite> cells;
    std::vector<UePlacement> ues;
};

// SE = log2(1 + RSRP / (I + sigma^2))
inline double spectral_efficiency(const LinkState& link, double noise_power_w) {
    if (!(noise_power_w > 0.0)) throw contract_error("noise power must be > 0");
    return std::log2(1.0 + link.rsrp_w / (link.interference_w + noise_power_w));
}

namespace detail {

// Hexagonal spiral: center site first, then rings of 6k sites at radius k*d.
inline std::vector<CellSite> hex_spiral(int count, double spacing) {
    std::vector<CellSite> sites;
    sites.push_back({0.0, 0.0});
    // axial hex directions
    static const int dq[6] = {1, 0, -1, -1, 0, 1};
    static const int dr[6] = {-1, -1, 0, 1, 1, 0};
    int ring = 1;
    while (static_cast<int>(sites.size()) < count) {
        int q = 0, r = ring;  // start at "south" corner of the ring
        for (int side = 0; side < 6 && static_cast<int>(sites.size()) < count; ++side) {
            for (int step = 0; step < ring && static_cast<int>(sites.size()) < count; ++step) {
                double x = spacing * (q + r * 0.5);
                double y = spacing * (r * std::sqrt(3.0) / 2.0);
                sites.push_back({x, y});
                q += dq[side];
                r += dr[side];
            }
        }
        ++ring;
    }
    sites.resize(static_cast<std::size_t>(count));
    return sites;
}

inline double pathloss_db(const NetworkConfig& cfg, double distance_m) {
    double d = std::max(distance_m, cfg.ref_distance_m);
    return cfg.ref_pathloss_db() +
           10.0 * cfg.pathloss_exponent * std::log10(d / cfg.ref_distance_m);
}

inline double link_distance(const CellSite& c, const UePlacement& u) {
    double dx = u.x - c.x, dy = u.y - c.y;
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace detail

// Places the cell grid and drops UEs uniformly over the evaluated sector of
// the central cell (a 120-degree wedge when sectors_per_cell is 3). Shadowing
// is drawn once per (UE, cell) link and stays fixed for the run.
inline Topology place_topology(const NetworkConfig& cfg, Rng& rng) {
    Topology topo;
    topo.cfg = cfg;
    topo.cells = detail::hex_spiral(cfg.num_cells, cfg.inter_site_m);
    topo.ues.resize(static_cast<std::size_t>(cfg.num_ue));

    const double wedge = 2.0 * M_PI / cfg.sectors_per_cell;
    const double r_min = cfg.min_ue_distance_m;
    const double r_max = cfg.cell_radius_m;
    for (auto& ue : topo.ues) {
        // uniform over the annular wedge area
        double u1 = uniform(rng);
        double radius = std::sqrt(u1 * (r_max * r_max - r_min * r_min) + r_min * r_min);
        double angle = -wedge / 2.0 + wedge * uniform(rng);
        ue.x = radius * std::cos(angle);
        ue.y = radius * std::sin(angle);
        ue.serving_cell = 0;
        ue.shadow_db.resize(topo.cells.size());
        for (double& s : ue.shadow_db) s = normal(rng, 0.0, cfg.shadowing_sigma_db);
    }
    return topo;
}

// Draws per-TTI fading for every (UE, cell) link and rebuilds RSRP,
// interference (sum of the min(6, C-1) strongest neighbors) and SE.
inline std::vector<LinkState> step_links(const Topology& topo, Rng& rng, int /*step*/ = 0) {
    const NetworkConfig& cfg = topo.cfg;
    std::vector<LinkState> links(topo.ues.size());
    std::vector<double> neighbor_rx;
    neighbor_rx.reserve(topo.cells.size());

    for (std::size_t i = 0; i < topo.ues.size(); ++i) {
        const UePlacement& ue = topo.ues[i];
        LinkState st;

        for (std::size_t c = 0; c < topo.cells.size(); ++c) {
            double fade_db = normal(rng, 0.0, cfg.fading_sigma_db);
            double gain = (static_cast<int>(c) == ue.serving_cell)
                              ? cfg.antenna_gain_db
                              : cfg.antenna_gain_db - cfg.interference_rejection_db;
            double rx_dbm = cfg.tx_power_dbm + gain -
                            detail::pathloss_db(cfg, detail::link_distance(topo.cells[c], ue)) -
                            ue.shadow_db[c] + fade_db;
            double rx_w = dbm_to_watts(rx_dbm);
            if (static_cast<int>(c) == ue.serving_cell) {
                st.rsrp_w = rx_w;
            } else {
                neighbor_rx.push_back(rx_w);
            }
        }

        // six strongest interferers
        std::size_t take = std::min<std::size_t>(6, neighbor_rx.size());
        std::partial_sort(neighbor_rx.begin(), neighbor_rx.begin() + static_cast<std::ptrdiff_t>(take),
                          neighbor_rx.end(), std::greater<double>());
        st.interference_w = 0.0;
        for (std::size_t k = 0; k < take; ++k) st.interference_w += neighbor_rx[k];
        neighbor_rx.clear();

        st.se = spectral_efficiency(st, cfg.noise_power_w);
        links[i] = st;
    }
    return links;
}

}  // namespace ranslice
