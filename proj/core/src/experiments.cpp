#include "covertaoi/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "covertaoi/detection.hpp"
#include "covertaoi/solver.hpp"

namespace covertaoi {

void SweepSpec::validate() const {
    if (values.empty()) throw std::invalid_argument("SweepSpec: values must be non-empty");
    if (trials < 1) throw std::invalid_argument("SweepSpec: trials must be >= 1");
    base.validate();
}

std::string format_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

struct Accumulator {
    double sum = 0.0;
    double sumsq = 0.0;
    long n = 0;

    void add(double x) {
        sum += x;
        sumsq += x * x;
        ++n;
    }
    double mean() const { return n > 0 ? sum / n : 0.0; }
    double stderr_of_mean() const {
        if (n < 2) return 0.0;
        const double var = std::max(0.0, (sumsq - sum * sum / n) / (n - 1));
        return std::sqrt(var / n);
    }
};

ResultRow make_row(double value, const std::string& metric, const Accumulator& acc, long excluded) {
    ResultRow r;
    r.value = value;
    r.metric = metric;
    r.mean = acc.mean();
    r.stderr_of_mean = acc.stderr_of_mean();
    r.trials = acc.n;
    r.excluded = excluded;
    return r;
}

}  // namespace

std::vector<ResultRow> sweep_users(const SweepSpec& spec) {
    spec.validate();
    if (spec.variable != SweepVariable::NumUsers)
        throw std::invalid_argument("sweep_users: variable must be NumUsers");
    const std::vector<double> pmax_levels =
        spec.companion.empty() ? std::vector<double>{spec.base.power_budget_w} : spec.companion;

    std::vector<ResultRow> rows;
    for (std::size_t ki = 0; ki < spec.values.size(); ++ki) {
        const int K = static_cast<int>(spec.values[ki]);
        for (double pmax : pmax_levels) {
            ScenarioConfig cfg = spec.base;
            cfg.num_users = K;
            cfg.power_budget_w = pmax;
            cfg.validate();
            Accumulator acc;
            long excluded = 0;
            for (long t = 0; t < spec.trials; ++t) {
                // Channel realization depends on (K, trial) only, so the
                // P_max columns see identical instances.
                Rng rng(Rng::derive_seed(spec.base.rng_seed, ki * 1000003ULL + t));
                const auto topo = sample_topology(cfg, rng);
                const auto ch = next_channel_state(topo, cfg, 0, rng);
                const auto sol = alternating_solve(ch.user_gains, ch.willie_gain, cfg);
                if (sol.status == SolveStatus::Converged)
                    acc.add(sol.avg_aoi_s);
                else
                    ++excluded;
            }
            rows.push_back(make_row(K, "avg_aoi_pmax=" + format_sig12(pmax), acc, excluded));
        }
    }
    return rows;
}

std::vector<ResultRow> sweep_power(const SweepSpec& spec) {
    spec.validate();
    if (spec.variable != SweepVariable::PowerBudget)
        throw std::invalid_argument("sweep_power: variable must be PowerBudget");
    const std::vector<double> distances =
        spec.companion.empty() ? std::vector<double>{spec.base.area_radius_m / 2.0} : spec.companion;
    const NoiseUncertainty nu{spec.base.willie_noise_nominal_w, spec.base.noise_uncertainty};

    std::vector<ResultRow> rows;
    for (double pmax : spec.values) {
        ScenarioConfig cfg = spec.base;
        cfg.power_budget_w = pmax;
        cfg.validate();
        for (std::size_t di = 0; di < distances.size(); ++di) {
            const double d_aw = distances[di];
            Accumulator raw, solved;
            long excluded = 0;
            for (long t = 0; t < spec.trials; ++t) {
                // Seed depends on (distance, trial) only: the P_max axis
                // reuses identical fading, keeping the raw curve monotone.
                Rng rng(Rng::derive_seed(spec.base.rng_seed, di * 1000003ULL + t));
                auto topo = sample_topology(cfg, rng);
                topo.willie_distance_m = d_aw;
                const auto ch = next_channel_state(topo, cfg, 0, rng);
                raw.add(optimal_detection(pmax, ch.willie_gain, nu).min_total_error);
                const auto sol = alternating_solve(ch.user_gains, ch.willie_gain, cfg);
                if (sol.status == SolveStatus::Converged)
                    solved.add(optimal_detection(sol.power.total(), ch.willie_gain, nu).min_total_error);
                else
                    ++excluded;
            }
            rows.push_back(make_row(pmax, "xi_raw_daw=" + format_sig12(d_aw), raw, 0));
            rows.push_back(make_row(pmax, "xi_solver_daw=" + format_sig12(d_aw), solved, excluded));
        }
    }
    return rows;
}

std::vector<Fig5Row> run_fig5(const ScenarioConfig& cfg, std::uint64_t seed, long num_slots) {
    cfg.validate();
    if (cfg.num_users != 3) throw std::invalid_argument("run_fig5: requires num_users == 3");
    if (num_slots < 1) throw std::invalid_argument("run_fig5: num_slots must be >= 1");

    Rng topo_rng(Rng::derive_seed(seed, 0));
    const auto topo = sample_topology(cfg, topo_rng);

    // Identical channel draws for both policies.
    Rng rng_a(Rng::derive_seed(seed, 1));
    Rng rng_b(Rng::derive_seed(seed, 1));
    const auto aware = run_slotted(cfg, topo, PolicyKind::AocAware, num_slots, rng_a);
    const auto fixed = run_slotted(cfg, topo, PolicyKind::StaticPower, num_slots, rng_b);

    std::vector<Fig5Row> rows(num_slots);
    for (long s = 0; s < num_slots; ++s) {
        rows[s].slot = s;
        rows[s].h_aw = aware[s].channel.willie_gain;
        rows[s].pa_aware = aware[s].power.total();
        rows[s].pa_static = fixed[s].power.total();
        rows[s].xi_aware = aware[s].xi_star;
        rows[s].xi_static = fixed[s].xi_star;
        rows[s].threshold = 1.0 - cfg.covert_budget;
    }
    return rows;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // '\n' endings everywhere
    if (!out) throw std::runtime_error("emit_csv: cannot open for writing: " + path);
    return out;
}

}  // namespace

void emit_csv(const std::vector<ResultRow>& table, const std::string& path) {
    auto out = open_out(path);
    out << "value,metric,mean,stderr,trials,excluded\n";
    for (const auto& r : table)
        out << format_sig12(r.value) << ',' << r.metric << ',' << format_sig12(r.mean) << ','
            << format_sig12(r.stderr_of_mean) << ',' << r.trials << ',' << r.excluded << '\n';
    if (!out) throw std::runtime_error("emit_csv: write failed: " + path);
}

void emit_csv(const std::vector<Fig5Row>& rows, const std::string& path) {
    auto out = open_out(path);
    out << "slot,h_aw,pa_aware,pa_static,xi_aware,xi_static,threshold\n";
    for (const auto& r : rows)
        out << r.slot << ',' << format_sig12(r.h_aw) << ',' << format_sig12(r.pa_aware) << ','
            << format_sig12(r.pa_static) << ',' << format_sig12(r.xi_aware) << ','
            << format_sig12(r.xi_static) << ',' << format_sig12(r.threshold) << '\n';
    if (!out) throw std::runtime_error("emit_csv: write failed: " + path);
}

}  // namespace covertaoi
