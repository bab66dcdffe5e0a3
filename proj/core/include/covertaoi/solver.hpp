// solver.hpp - alternating minimization of the average AoI subject to
// the AoC window, the power budget, the covertness cap, and per-user
// packet delivery.
//
// The AoI step is the closed-form LP optimum d_k = S / (B R_k). The
// power step works on tail sums T_k = sum_{j>=k} p_j: every rate (exact
// and linearized) depends on p only through (T_k, T_{k+1}), which turns
// both the max-min-slack feasibility check and the average-AoI descent
// into cheap one-dimensional recursions.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "covertaoi/config.hpp"
#include "covertaoi/noma.hpp"

namespace covertaoi {

using AoiVector = std::vector<double>;  // d_k, seconds

enum class SolveStatus { Converged, Infeasible, MaxIterations };

struct SolveResult {
    PowerAllocation power;      // SIC-ordered
    AoiVector aoi;              // seconds, SIC-ordered
    double avg_aoi_s = 0.0;     // (1/K) sum d_k
    int outer_iterations = 0;
    int sca_iterations_total = 0;
    SolveStatus status = SolveStatus::Infeasible;
    double covert_margin = 0.0;  // xi*(p_a) - (1 - eps_w)
    /// On Infeasible: per-user delivery time the channel would need
    /// (+inf where the rate is zero). Consumed by the simulation's
    /// fragmentation path.
    AoiVector required_aoi_s;
    std::vector<double> avg_aoi_trajectory;  // one entry per outer iteration
};

struct AoiSubproblemResult {
    bool feasible = false;
    AoiVector aoi;          // valid when feasible
    AoiVector required_aoi; // always set: S/(B R_k), +inf at zero rate
};

/// Closed-form optimum of the per-power LP: d_k = S/(B R_k(p)),
/// feasible iff every d_k fits in the AoC window tau - delta.
AoiSubproblemResult aoi_subproblem(const PowerAllocation& p, const std::vector<double>& sorted_gains,
                                   const ScenarioConfig& cfg);

struct PowerSubproblemResult {
    bool feasible = false;   // max-min slack >= 0
    PowerAllocation power;
    double slack = 0.0;      // achieved min_k (d_k R~_k - S/B), linearized
    int sca_iterations = 0;
};

/// SCA max-min delivery slack at fixed AoI targets d: maximize s such
/// that d_k * linearized_rate_k(p) >= S/B + s for all k, subject to
/// sum p <= min(P_max, covert cap) and p >= 0. Re-anchors until the
/// slack improves by less than 1e-8. Throws std::invalid_argument on
/// bad inputs; a zero covert cap reports infeasible.
PowerSubproblemResult power_subproblem(const AoiVector& d, const std::vector<double>& sorted_gains,
                                       double h_aw, const ScenarioConfig& cfg,
                                       const PowerAllocation& anchor);

/// Full alternating solve on one channel state. Gains may be passed
/// unsorted; powers and AoI in the result are indexed in SIC order
/// (ascending gain), recoverable via sic_order(gains).
SolveResult alternating_solve(const std::vector<double>& gains, double h_aw,
                              const ScenarioConfig& cfg);

struct FeasibilityReport {
    bool pass = false;
    double worst_relative_violation = 0.0;
    std::string worst_constraint;
};

/// Independent audit: re-evaluates every original (non-linearized)
/// constraint of the joint problem at the solver's output.
FeasibilityReport verify_kkt_feasibility(const SolveResult& result,
                                         const std::vector<double>& gains, double h_aw,
                                         const ScenarioConfig& cfg);

}  // namespace covertaoi
