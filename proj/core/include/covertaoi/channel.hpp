// channel.hpp - random topologies and block-fading gain processes
//
// Link gains are linear power gains h = chi * d^(-alpha), with chi a
// unit-mean exponential fading factor redrawn independently each slot
// and held constant inside the slot (block fading at AoC granularity).

#pragma once

#include <vector>

#include "covertaoi/config.hpp"
#include "covertaoi/rng.hpp"

namespace covertaoi {

/// Alice sits at the origin; users and Willie are placed uniformly by
/// area on the disk of radius `area_radius_m`.
struct Topology {
    std::vector<double> user_distances_m;  // d_ak, one per user
    double willie_distance_m = 0.0;        // d_aw
};

/// Per-slot linear power gains, valid for one AoC window.
struct ChannelState {
    std::vector<double> user_gains;  // h_ak
    double willie_gain = 0.0;        // h_aw
    long slot_index = 0;
};

Topology sample_topology(const ScenarioConfig& cfg, Rng& rng);

/// distance^(-alpha); throws std::domain_error for distance <= 0.
double path_gain(double distance_m, double alpha);

/// Unit-mean exponential fading power factor (Rayleigh amplitude squared).
double sample_fading(Rng& rng);

ChannelState next_channel_state(const Topology& topology, const ScenarioConfig& cfg,
                                long slot, Rng& rng);

}  // namespace covertaoi
