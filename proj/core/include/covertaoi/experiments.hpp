// experiments.hpp - Monte Carlo sweep harness and CSV emission.
//
// Sweeps are reproducible bit-for-bit from (config, seed): every trial
// runs on a sub-stream derived from the master seed, and comparisons
// across sweep levels reuse the same channel realizations (common
// random numbers).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covertaoi/config.hpp"
#include "covertaoi/simulation.hpp"

namespace covertaoi {

enum class SweepVariable { NumUsers, PowerBudget, WillieDistance, Slots };

struct SweepSpec {
    SweepVariable variable = SweepVariable::NumUsers;
    std::vector<double> values;     // primary axis (K or P_max)
    std::vector<double> companion;  // P_max levels (users sweep) or Willie distances (power sweep)
    long trials = 200;
    ScenarioConfig base;
    std::string output_path;

    void validate() const;
};

struct ResultRow {
    double value = 0.0;       // sweep value
    std::string metric;       // avg_aoi / xi_star variants
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    long trials = 0;
    long excluded = 0;        // infeasible trials, reported never dropped
};

/// Average converged AoI versus number of users, one column of rows per
/// companion P_max level. Infeasible trials are excluded and counted.
std::vector<ResultRow> sweep_users(const SweepSpec& spec);

/// Willie's minimum total error versus power budget, one pair of
/// metrics per companion Willie distance: the raw curve at p_a = P_max
/// and the curve at the solver's chosen (covert-capped) p_a.
std::vector<ResultRow> sweep_power(const SweepSpec& spec);

struct Fig5Row {
    long slot = 0;
    double h_aw = 0.0;
    double pa_aware = 0.0;
    double pa_static = 0.0;
    double xi_aware = 0.0;
    double xi_static = 0.0;
    double threshold = 0.0;  // 1 - eps_w
};

/// Paired-seed slotted run (K = 3) under both policies on identical
/// channel draws.
std::vector<Fig5Row> run_fig5(const ScenarioConfig& cfg, std::uint64_t seed, long num_slots);

/// UTF-8 CSV, '\n' line endings, '.' decimal separator, doubles at 12
/// significant digits. Header: value,metric,mean,stderr,trials,excluded.
void emit_csv(const std::vector<ResultRow>& table, const std::string& path);

/// Header: slot,h_aw,pa_aware,pa_static,xi_aware,xi_static,threshold.
void emit_csv(const std::vector<Fig5Row>& rows, const std::string& path);

std::string format_sig12(double v);

}  // namespace covertaoi
