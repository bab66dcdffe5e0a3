// config.hpp - scenario parameters and the key=value config loader

#pragma once

#include <cstdint>
#include <string>

namespace covertaoi {

/// All physical and algorithmic parameters of one scenario. Every
/// power-like field is linear watts; dB-suffixed config keys are
/// converted at load time (-x dB reads as 10^(-x/10) W).
struct ScenarioConfig {
    int num_users = 3;                    // K
    double bandwidth_hz = 1e6;            // B
    double packet_size_bits = 1000.0;     // S
    double aoc_s = 10e-3;                 // tau, CSI validity window
    double measurement_time_s = 0.1e-3;   // delta, channel probing time
    double covert_budget = 0.95;          // eps_w
    double user_noise_w = 1e-16;          // sigma^2 (-160 dB)
    double willie_noise_nominal_w = 1e-12;  // sigma_w^2 nominal (-120 dB)
    double noise_uncertainty = 1.9952623149688795;  // mu, linear (3 dB)
    double pathloss_exponent = 3.0;       // alpha
    double power_budget_w = 1e-3;         // P_max
    double area_radius_m = 100.0;         // R
    std::uint64_t rng_seed = 1;

    /// Usable transmission time inside one AoC window.
    double usable_slot_s() const { return aoc_s - measurement_time_s; }

    /// Minimum spectral efficiency (bits/s/Hz) that lets a full packet
    /// fit inside one AoC window.
    double min_rate() const { return packet_size_bits / (bandwidth_hz * usable_slot_s()); }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

double db_to_linear(double db);
double linear_to_db(double linear);

/// Parses a flat `key = value` file ('#' comments, blank lines ignored)
/// on top of the defaults above. Keys match the field names; power and
/// uncertainty fields also accept a `_db` suffix. Unknown keys throw.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text);

}  // namespace covertaoi
