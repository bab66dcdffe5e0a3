#include "covertaoi/simulation.hpp"

#include <cmath>
#include <stdexcept>

#include "covertaoi/detection.hpp"
#include "covertaoi/solver.hpp"

namespace covertaoi {

long fragment_packet(double required_d_s, double tau_s) {
    if (!(required_d_s > 0) || !(tau_s > 0))
        throw std::domain_error("fragment_packet: arguments must be > 0");
    return static_cast<long>(std::ceil(required_d_s / tau_s));
}

namespace {

struct UserState {
    double g_received = 0.0;   // generation time of newest delivered packet
    bool in_flight = false;
    double g_inflight = 0.0;   // generation time of the packet in service
    long frag_n = 0;           // 0 while unfragmented
    long frags_done = 0;
};

}  // namespace

std::vector<SlotTrace> run_slotted(const ScenarioConfig& cfg, const Topology& topology,
                                   PolicyKind policy, long num_slots, Rng& rng) {
    cfg.validate();
    if (num_slots < 1) throw std::invalid_argument("run_slotted: num_slots must be >= 1");
    const std::size_t K = topology.user_distances_m.size();
    if (K != static_cast<std::size_t>(cfg.num_users))
        throw std::invalid_argument("run_slotted: topology size must equal num_users");

    const NoiseUncertainty nu{cfg.willie_noise_nominal_w, cfg.noise_uncertainty};
    const double tau = cfg.aoc_s;
    const double delta = cfg.measurement_time_s;
    const double window = cfg.usable_slot_s();
    const double bits_per_hz = cfg.packet_size_bits / cfg.bandwidth_hz;
    const double covert_threshold = 1.0 - cfg.covert_budget;

    std::vector<UserState> users(K);
    std::vector<double> static_powers_by_user;  // original user order

    std::vector<SlotTrace> traces;
    traces.reserve(num_slots);
    for (long slot = 0; slot < num_slots; ++slot) {
        SlotTrace tr;
        tr.slot_index = slot;
        tr.channel = next_channel_state(topology, cfg, slot, rng);
        const auto order = sic_order(tr.channel.user_gains);
        std::vector<double> h(K);
        for (std::size_t k = 0; k < K; ++k) h[k] = tr.channel.user_gains[order[k]];

        if (policy == PolicyKind::AocAware || slot == 0) {
            const auto solve = alternating_solve(tr.channel.user_gains, tr.channel.willie_gain, cfg);
            tr.power = solve.power;  // best-effort powers on infeasible slots
            if (policy == PolicyKind::StaticPower) {
                static_powers_by_user.assign(K, 0.0);
                for (std::size_t k = 0; k < K; ++k)
                    static_powers_by_user[order[k]] = solve.power.powers_w[k];
            }
        } else {
            // Fixed per-user powers follow their users into this slot's
            // SIC order.
            tr.power.powers_w.resize(K);
            for (std::size_t k = 0; k < K; ++k)
                tr.power.powers_w[k] = static_powers_by_user[order[k]];
        }

        const double pa = tr.power.total();
        tr.xi_star = optimal_detection(pa, tr.channel.willie_gain, nu).min_total_error;
        tr.covert_ok = tr.xi_star >= covert_threshold - 1e-12;

        std::vector<double> rate_by_user(K, 0.0);
        for (std::size_t k = 0; k < K; ++k)
            rate_by_user[order[k]] = rate(k, tr.power, h, cfg.user_noise_w);

        const double slot_start = slot * tau;
        const double slot_end = slot_start + tau;
        tr.delivered_fractions.assign(K, 0.0);
        tr.aoi_s.assign(K, 0.0);

        for (std::size_t u = 0; u < K; ++u) {
            UserState& st = users[u];
            const double r = rate_by_user[u];
            bool delivered = false;
            double deliver_time = 0.0;

            if (r > 0) {
                if (!st.in_flight) {
                    st.in_flight = true;
                    st.g_inflight = slot_start + delta;
                    st.frag_n = 0;
                    st.frags_done = 0;
                }
                const double required_d = bits_per_hz / r;  // full packet at this slot's rate
                if (st.frag_n == 0) {
                    if (required_d <= window * (1.0 + 1e-12)) {
                        delivered = true;
                        deliver_time = slot_start + delta + required_d;
                    } else {
                        st.frag_n = fragment_packet(required_d, tau);
                        const double frag_time = required_d / static_cast<double>(st.frag_n);
                        if (frag_time <= window * (1.0 + 1e-12)) st.frags_done = 1;
                    }
                } else {
                    const double frag_time = required_d / static_cast<double>(st.frag_n);
                    if (frag_time <= window * (1.0 + 1e-12)) {
                        ++st.frags_done;
                        if (st.frags_done == st.frag_n) {
                            delivered = true;
                            deliver_time = slot_start + delta + frag_time;
                        }
                    }
                }
            }

            if (delivered) {
                tr.delivered_fractions[u] = 1.0;
                tr.aoi_s[u] = deliver_time - st.g_inflight;
                st.g_received = st.g_inflight;
                st.in_flight = false;
                st.frag_n = 0;
                st.frags_done = 0;
            } else {
                tr.delivered_fractions[u] =
                    (st.frag_n > 0)
                        ? static_cast<double>(st.frags_done) / static_cast<double>(st.frag_n)
                        : 0.0;
                tr.aoi_s[u] = slot_end - st.g_received;
            }
        }
        traces.push_back(std::move(tr));
    }
    return traces;
}

long covert_violation_count(const std::vector<SlotTrace>& traces) {
    long n = 0;
    for (const auto& tr : traces)
        if (!tr.covert_ok) ++n;
    return n;
}

double average_aoi_of_trace(const std::vector<SlotTrace>& traces) {
    if (traces.empty()) throw std::invalid_argument("average_aoi_of_trace: empty trace");
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& tr : traces) {
        for (double a : tr.aoi_s) {
            sum += a;
            ++n;
        }
    }
    return sum / static_cast<double>(n);
}

}  // namespace covertaoi
