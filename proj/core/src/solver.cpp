#include "covertaoi/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "covertaoi/detection.hpp"

namespace covertaoi {

namespace {

constexpr double kLog2e = 1.4426950408889634;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlackTol = 1e-8;       // SCA inner stop
constexpr double kOuterRelTol = 1e-6;    // outer stop on avg AoI
constexpr int kMaxOuter = 50;
constexpr int kMaxSca = 100;

std::vector<double> tails_from_powers(const std::vector<double>& p) {
    std::vector<double> t(p.size());
    double s = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) {
        s += p[i];
        t[i] = s;
    }
    return t;
}

std::vector<double> powers_from_tails(const std::vector<double>& t) {
    std::vector<double> p(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double next = (i + 1 < t.size()) ? t[i + 1] : 0.0;
        p[i] = std::max(t[i] - next, 0.0);
    }
    return p;
}

// Exact rate of SIC position k expressed through adjacent tail sums.
double rate_from_tails(double h, double tk, double tk1, double sigma2) {
    return std::log2((h * tk + sigma2) / (h * tk1 + sigma2));
}

double mean_aoi_of_tails(const std::vector<double>& t, const std::vector<double>& h,
                         double sigma2, double bits_per_hz) {
    const std::size_t K = h.size();
    double sum = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        const double tk1 = (k + 1 < K) ? t[k + 1] : 0.0;
        const double r = rate_from_tails(h[k], t[k], tk1, sigma2);
        if (!(r > 0)) return kInf;
        sum += bits_per_hz / r;
    }
    return sum / static_cast<double>(K);
}

double transmit_budget(double h_aw, const ScenarioConfig& cfg) {
    const NoiseUncertainty nu{cfg.willie_noise_nominal_w, cfg.noise_uncertainty};
    return std::min(cfg.power_budget_w, covert_power_cap(h_aw, nu, cfg.covert_budget));
}

// Minimal tail sums meeting every linearized delivery constraint at
// slack s, for the given anchor tails. Backward recursion: the
// requirement on T_k is increasing in T_{k+1}, so taking each tail
// minimal is globally minimal. Returns empty when a bound overflows.
std::vector<double> minimal_tails_for_slack(double s, const AoiVector& d,
                                            const std::vector<double>& h, double sigma2,
                                            double bits_per_hz,
                                            const std::vector<double>& anchor_tails) {
    const std::size_t K = h.size();
    std::vector<double> t(K, 0.0);
    double t_next = 0.0;
    for (std::size_t k = K; k-- > 0;) {
        const double anc = (k + 1 < K) ? anchor_tails[k + 1] : 0.0;
        const double anc_interf = h[k] * anc + sigma2;
        const double slope = h[k] * kLog2e / anc_interf;
        const double rhs_log2 =
            (bits_per_hz + s) / d[k] + std::log2(anc_interf) + slope * (t_next - anc);
        const double need = (std::exp2(rhs_log2) - sigma2) / h[k];
        if (!std::isfinite(need)) return {};
        t[k] = std::max(t_next, need);
        t_next = t[k];
    }
    return t;
}

double linearized_slack(const std::vector<double>& t, const AoiVector& d,
                        const std::vector<double>& h, double sigma2, double bits_per_hz,
                        const std::vector<double>& anchor_tails) {
    const std::size_t K = h.size();
    double worst = kInf;
    for (std::size_t k = 0; k < K; ++k) {
        const double tk1 = (k + 1 < K) ? t[k + 1] : 0.0;
        const double anc = (k + 1 < K) ? anchor_tails[k + 1] : 0.0;
        const double anc_interf = h[k] * anc + sigma2;
        const double lin = std::log2(h[k] * t[k] + sigma2) - std::log2(anc_interf) -
                           h[k] * kLog2e / anc_interf * (tk1 - anc);
        worst = std::min(worst, d[k] * lin - bits_per_hz);
    }
    return worst;
}

// One max-min-slack solve for a fixed anchor: bisection on s with the
// minimal-tails feasibility oracle.
struct MaxMinStep {
    std::vector<double> tails;
    double slack;
};

MaxMinStep maxmin_slack_step(const AoiVector& d, const std::vector<double>& h, double sigma2,
                             double bits_per_hz, double budget,
                             const std::vector<double>& anchor_tails) {
    const std::size_t K = h.size();
    // Upper bound: each constraint alone cannot beat full power with
    // zero interference.
    double hi = kInf;
    for (std::size_t k = 0; k < K; ++k) {
        const double anc = (k + 1 < K) ? anchor_tails[k + 1] : 0.0;
        const double anc_interf = h[k] * anc + sigma2;
        const double lin = std::log2(h[k] * budget + sigma2) - std::log2(anc_interf) +
                           h[k] * kLog2e / anc_interf * anc;
        hi = std::min(hi, d[k] * lin - bits_per_hz);
    }
    // Lower bound: the anchor itself, projected into the budget.
    std::vector<double> start = anchor_tails;
    if (start.empty() || start[0] <= 0.0) {
        start.assign(K, 0.0);
        for (std::size_t k = 0; k < K; ++k)
            start[k] = budget * static_cast<double>(K - k) / static_cast<double>(K);
    } else if (start[0] > budget) {
        const double scale = budget / start[0];
        for (double& v : start) v *= scale;
    }
    double lo = linearized_slack(start, d, h, sigma2, bits_per_hz, anchor_tails);
    std::vector<double> best = start;
    if (!(hi > lo)) return {best, lo};
    for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        auto t = minimal_tails_for_slack(mid, d, h, sigma2, bits_per_hz, anchor_tails);
        if (!t.empty() && t[0] <= budget) {
            lo = mid;
            best = std::move(t);
        } else {
            hi = mid;
        }
    }
    return {best, linearized_slack(best, d, h, sigma2, bits_per_hz, anchor_tails)};
}

}  // namespace

AoiSubproblemResult aoi_subproblem(const PowerAllocation& p, const std::vector<double>& sorted_gains,
                                   const ScenarioConfig& cfg) {
    cfg.validate();
    if (p.powers_w.size() != sorted_gains.size())
        throw std::invalid_argument("aoi_subproblem: size mismatch");
    const double bits_per_hz = cfg.packet_size_bits / cfg.bandwidth_hz;
    const double window = cfg.usable_slot_s();
    AoiSubproblemResult res;
    res.required_aoi.resize(sorted_gains.size());
    res.feasible = true;
    for (std::size_t k = 0; k < sorted_gains.size(); ++k) {
        const double r = rate(k, p, sorted_gains, cfg.user_noise_w);
        res.required_aoi[k] = (r > 0) ? bits_per_hz / r : kInf;
        if (!(res.required_aoi[k] <= window * (1.0 + 1e-12))) res.feasible = false;
    }
    if (res.feasible) res.aoi = res.required_aoi;
    return res;
}

PowerSubproblemResult power_subproblem(const AoiVector& d, const std::vector<double>& sorted_gains,
                                       double h_aw, const ScenarioConfig& cfg,
                                       const PowerAllocation& anchor) {
    cfg.validate();
    const std::size_t K = sorted_gains.size();
    if (d.size() != K || anchor.powers_w.size() != K)
        throw std::invalid_argument("power_subproblem: size mismatch");
    for (double dk : d)
        if (!(dk > 0)) throw std::invalid_argument("power_subproblem: d must be > 0");
    for (double pk : anchor.powers_w)
        if (!(pk >= 0)) throw std::invalid_argument("power_subproblem: anchor must be >= 0");
    if (!(h_aw > 0)) throw std::invalid_argument("power_subproblem: h_aw must be > 0");

    PowerSubproblemResult out;
    const double budget = transmit_budget(h_aw, cfg);
    if (!(budget > 0)) {
        out.power.powers_w.assign(K, 0.0);
        out.slack = -kInf;
        return out;
    }
    const double sigma2 = cfg.user_noise_w;
    const double bits_per_hz = cfg.packet_size_bits / cfg.bandwidth_hz;

    std::vector<double> anchor_tails = tails_from_powers(anchor.powers_w);
    double prev_slack = -kInf;
    std::vector<double> tails;
    for (int it = 0; it < kMaxSca; ++it) {
        auto step = maxmin_slack_step(d, sorted_gains, sigma2, bits_per_hz, budget, anchor_tails);
        ++out.sca_iterations;
        tails = step.tails;
        anchor_tails = step.tails;
        if (step.slack - prev_slack < kSlackTol) {
            prev_slack = std::max(prev_slack, step.slack);
            break;
        }
        prev_slack = step.slack;
    }
    out.power.powers_w = powers_from_tails(tails);
    out.slack = prev_slack;
    out.feasible = out.slack >= -1e-12;
    return out;
}

namespace {

// Average-AoI descent over tail sums at full budget. Each coordinate
// slice touches only two rates; a coarse scan picks the basin and
// golden-section refines it. The AoC window enters as the per-user
// minimum rate r_min.
class TailRefiner {
public:
    TailRefiner(const std::vector<double>& h, double sigma2, double bits_per_hz, double r_min,
                double budget)
        : h_(h), sigma2_(sigma2), bits_per_hz_(bits_per_hz), growth_(std::exp2(r_min)),
          budget_(budget) {}

    bool feasible(const std::vector<double>& t) const {
        for (std::size_t k = 0; k < h_.size(); ++k) {
            const double tk1 = (k + 1 < h_.size()) ? t[k + 1] : 0.0;
            if (h_[k] * t[k] + sigma2_ < growth_ * (h_[k] * tk1 + sigma2_) * (1.0 - 1e-12))
                return false;
        }
        return t[0] <= budget_ * (1.0 + 1e-12);
    }

    double objective(const std::vector<double>& t) const {
        return mean_aoi_of_tails(t, h_, sigma2_, bits_per_hz_);
    }

    // One full coordinate sweep; returns the new objective.
    double sweep(std::vector<double>& t) const {
        const std::size_t K = h_.size();
        for (std::size_t i = 1; i < K; ++i) {
            const double t_up = t[i - 1];
            const double t_dn = (i + 1 < K) ? t[i + 1] : 0.0;
            // R_{i-1} >= r_min caps t[i] from above, R_i >= r_min from below.
            double hi = std::min(t_up, ((h_[i - 1] * t_up + sigma2_) / growth_ - sigma2_) / h_[i - 1]);
            double lo = std::max(t_dn, (growth_ * (h_[i] * t_dn + sigma2_) - sigma2_) / h_[i]);
            if (!(hi >= lo)) continue;  // slice pinched by the AoC bounds
            t[i] = minimize_slice(t, i, lo, hi);
        }
        return objective(t);
    }

private:
    double slice_value(const std::vector<double>& t, std::size_t i, double x) const {
        const double t_dn = (i + 1 < h_.size()) ? t[i + 1] : 0.0;
        const double r_prev = rate_from_tails(h_[i - 1], t[i - 1], x, sigma2_);
        const double r_own = rate_from_tails(h_[i], x, t_dn, sigma2_);
        if (!(r_prev > 0) || !(r_own > 0)) return kInf;
        return 1.0 / r_prev + 1.0 / r_own;
    }

    double minimize_slice(const std::vector<double>& t, std::size_t i, double lo, double hi) const {
        constexpr int kScan = 32;
        double best_x = std::clamp(t[i], lo, hi);
        double best_v = slice_value(t, i, best_x);
        for (int j = 0; j <= kScan; ++j) {
            const double x = lo + (hi - lo) * j / kScan;
            const double v = slice_value(t, i, x);
            if (v < best_v) {
                best_v = v;
                best_x = x;
            }
        }
        // Golden-section around the scan winner.
        constexpr double kGolden = 0.6180339887498949;
        double a = std::max(lo, best_x - (hi - lo) / kScan);
        double b = std::min(hi, best_x + (hi - lo) / kScan);
        double x1 = b - kGolden * (b - a);
        double x2 = a + kGolden * (b - a);
        double f1 = slice_value(t, i, x1);
        double f2 = slice_value(t, i, x2);
        for (int it = 0; it < 90 && b - a > 1e-16 * std::max(budget_, b); ++it) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - kGolden * (b - a);
                f1 = slice_value(t, i, x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + kGolden * (b - a);
                f2 = slice_value(t, i, x2);
            }
        }
        const double mid = 0.5 * (a + b);
        return (slice_value(t, i, mid) <= best_v) ? mid : best_x;
    }

    const std::vector<double>& h_;
    double sigma2_;
    double bits_per_hz_;
    double growth_;  // 2^r_min
    double budget_;
};

struct RunOutcome {
    std::vector<double> tails;
    double avg_aoi = kInf;
    std::vector<double> trajectory;
    bool converged = false;
    int iterations = 0;
};

RunOutcome run_descent(const TailRefiner& refiner, std::vector<double> tails) {
    RunOutcome run;
    double prev = refiner.objective(tails);
    for (int it = 0; it < kMaxOuter; ++it) {
        const double obj = refiner.sweep(tails);
        ++run.iterations;
        run.trajectory.push_back(obj);
        if (prev - obj < kOuterRelTol * std::max(obj, 1e-300)) {
            run.converged = true;
            prev = obj;
            break;
        }
        prev = obj;
    }
    run.tails = std::move(tails);
    run.avg_aoi = prev;
    return run;
}

}  // namespace

SolveResult alternating_solve(const std::vector<double>& gains, double h_aw,
                              const ScenarioConfig& cfg) {
    cfg.validate();
    const std::size_t K = gains.size();
    if (K != static_cast<std::size_t>(cfg.num_users))
        throw std::invalid_argument("alternating_solve: gains size must equal num_users");
    if (!(h_aw > 0)) throw std::invalid_argument("alternating_solve: h_aw must be > 0");

    const auto order = sic_order(gains);
    std::vector<double> h(K);
    for (std::size_t k = 0; k < K; ++k) h[k] = gains[order[k]];

    const NoiseUncertainty nu{cfg.willie_noise_nominal_w, cfg.noise_uncertainty};
    const double sigma2 = cfg.user_noise_w;
    const double bits_per_hz = cfg.packet_size_bits / cfg.bandwidth_hz;
    const double window = cfg.usable_slot_s();
    const double budget = transmit_budget(h_aw, cfg);

    SolveResult res;
    res.power.powers_w.assign(K, 0.0);
    res.required_aoi_s.assign(K, kInf);
    if (!(budget > 0)) {
        res.status = SolveStatus::Infeasible;
        res.avg_aoi_s = kInf;
        res.covert_margin = optimal_detection(0.0, h_aw, nu).min_total_error - (1.0 - cfg.covert_budget);
        return res;
    }

    PowerAllocation p_equal;
    p_equal.powers_w.assign(K, budget / static_cast<double>(K));

    // Feasibility gate: SCA max-min slack at the loosest AoI targets.
    const AoiVector d_window(K, window);
    auto gate = power_subproblem(d_window, h, h_aw, cfg, p_equal);
    res.sca_iterations_total += gate.sca_iterations;
    if (!gate.feasible) {
        res.status = SolveStatus::Infeasible;
        res.power = gate.power;
        res.required_aoi_s = aoi_subproblem(gate.power, h, cfg).required_aoi;
        res.avg_aoi_s = kInf;
        res.covert_margin =
            optimal_detection(gate.power.total(), h_aw, nu).min_total_error - (1.0 - cfg.covert_budget);
        return res;
    }

    const TailRefiner refiner(h, sigma2, bits_per_hz, cfg.min_rate(), budget);

    std::vector<std::vector<double>> starts;
    {
        // Max-min point, scaled up to the full budget (raising every
        // tail by a common factor never lowers a rate).
        auto t = tails_from_powers(gate.power.powers_w);
        if (t[0] > 0) {
            const double scale = budget / t[0];
            for (double& v : t) v *= scale;
            starts.push_back(std::move(t));
        }
        starts.push_back(tails_from_powers(p_equal.powers_w));
        for (double q : {0.5, 0.15}) {
            std::vector<double> geo(K);
            double v = budget;
            for (std::size_t k = 0; k < K; ++k) {
                geo[k] = v;
                v *= q;
            }
            starts.push_back(std::move(geo));
        }
    }

    RunOutcome best;
    for (auto& start : starts) {
        if (!refiner.feasible(start)) continue;
        auto run = run_descent(refiner, start);
        if (run.avg_aoi < best.avg_aoi) best = std::move(run);
    }
    if (best.tails.empty()) {
        // The gate passed, so the scaled max-min start must be feasible;
        // reaching here means severe numerical trouble.
        res.status = SolveStatus::Infeasible;
        res.power = gate.power;
        res.required_aoi_s = aoi_subproblem(gate.power, h, cfg).required_aoi;
        res.avg_aoi_s = kInf;
        return res;
    }

    res.power.powers_w = powers_from_tails(best.tails);
    auto aoi = aoi_subproblem(res.power, h, cfg);
    res.aoi = aoi.feasible ? aoi.aoi : aoi.required_aoi;
    res.required_aoi_s = aoi.required_aoi;
    double sum = 0.0;
    for (double dk : res.aoi) sum += dk;
    res.avg_aoi_s = sum / static_cast<double>(K);
    res.outer_iterations = best.iterations;
    res.avg_aoi_trajectory = best.trajectory;
    res.status = best.converged ? SolveStatus::Converged : SolveStatus::MaxIterations;
    if (!aoi.feasible) res.status = SolveStatus::Infeasible;
    res.covert_margin =
        optimal_detection(res.power.total(), h_aw, nu).min_total_error - (1.0 - cfg.covert_budget);
    return res;
}

FeasibilityReport verify_kkt_feasibility(const SolveResult& result,
                                         const std::vector<double>& gains, double h_aw,
                                         const ScenarioConfig& cfg) {
    if (result.status != SolveStatus::Converged)
        throw std::invalid_argument("verify_kkt_feasibility: result must be Converged");
    const auto order = sic_order(gains);
    std::vector<double> h(gains.size());
    for (std::size_t k = 0; k < h.size(); ++k) h[k] = gains[order[k]];

    const NoiseUncertainty nu{cfg.willie_noise_nominal_w, cfg.noise_uncertainty};
    const double bits_per_hz = cfg.packet_size_bits / cfg.bandwidth_hz;
    const double window = cfg.usable_slot_s();

    FeasibilityReport rep;
    auto consider = [&rep](double rel, const std::string& name) {
        if (rel > rep.worst_relative_violation) {
            rep.worst_relative_violation = rel;
            rep.worst_constraint = name;
        }
    };

    const double total = result.power.total();
    consider((total - cfg.power_budget_w) / cfg.power_budget_w, "power_budget");
    const double xi = optimal_detection(total, h_aw, nu).min_total_error;
    consider(((1.0 - cfg.covert_budget) - xi) / std::max(1.0 - cfg.covert_budget, 1e-300),
             "covertness");
    for (std::size_t k = 0; k < h.size(); ++k) {
        consider(-result.power.powers_w[k] / cfg.power_budget_w, "power_nonneg");
        consider((result.aoi[k] - window) / window, "aoc_window");
        const double r = rate(k, result.power, h, cfg.user_noise_w);
        consider((bits_per_hz - result.aoi[k] * r) / bits_per_hz, "delivery");
    }
    rep.pass = rep.worst_relative_violation <= 1e-6;
    return rep;
}

}  // namespace covertaoi
