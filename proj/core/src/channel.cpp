#include "covertaoi/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace covertaoi {

namespace {

// Uniform by area: radius = R * sqrt(u). uniform01() is open at both
// ends, so distances land strictly inside (0, R).
double disk_radius(double R, Rng& rng) { return R * std::sqrt(rng.uniform01()); }

}  // namespace

Topology sample_topology(const ScenarioConfig& cfg, Rng& rng) {
    Topology topo;
    topo.user_distances_m.reserve(cfg.num_users);
    for (int k = 0; k < cfg.num_users; ++k)
        topo.user_distances_m.push_back(disk_radius(cfg.area_radius_m, rng));
    topo.willie_distance_m = disk_radius(cfg.area_radius_m, rng);
    return topo;
}

double path_gain(double distance_m, double alpha) {
    if (!(distance_m > 0)) throw std::domain_error("path_gain: distance must be > 0");
    return std::pow(distance_m, -alpha);
}

double sample_fading(Rng& rng) { return rng.exponential(); }

ChannelState next_channel_state(const Topology& topology, const ScenarioConfig& cfg,
                                long slot, Rng& rng) {
    ChannelState st;
    st.slot_index = slot;
    st.user_gains.reserve(topology.user_distances_m.size());
    for (double d : topology.user_distances_m)
        st.user_gains.push_back(sample_fading(rng) * path_gain(d, cfg.pathloss_exponent));
    st.willie_gain = sample_fading(rng) * path_gain(topology.willie_distance_m, cfg.pathloss_exponent);
    return st;
}

}  // namespace covertaoi
