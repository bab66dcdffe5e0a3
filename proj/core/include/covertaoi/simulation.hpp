// simulation.hpp - slotted engine: per-AoC channel re-measurement,
// power re-decision, packet fragmentation across slots, and per-slot
// covertness auditing.
//
// Timeline per user: a packet's generation time is the instant its
// service starts (measurement end of the slot where its first bits go
// out); fragmented packets keep their original generation time, so AoI
// keeps growing while fragments trickle. A delivery records the age at
// the delivery instant; slots without a delivery record the age at the
// slot end relative to the newest received packet.

#pragma once

#include <vector>

#include "covertaoi/channel.hpp"
#include "covertaoi/config.hpp"
#include "covertaoi/noma.hpp"
#include "covertaoi/rng.hpp"

namespace covertaoi {

enum class PolicyKind {
    AocAware,     // re-solve powers every slot from that slot's CSI
    StaticPower,  // solve once at slot 0, hold p fixed thereafter
};

struct SlotTrace {
    long slot_index = 0;
    ChannelState channel;
    PowerAllocation power;          // SIC order of this slot's gains
    double xi_star = 1.0;           // Willie's minimum total error, current h_aw
    bool covert_ok = true;          // xi_star >= 1 - eps_w
    std::vector<double> delivered_fractions;  // per user, original order
    std::vector<double> aoi_s;                // d_k(t) per user, original order
};

/// Slots a packet needing `required_d` seconds of service must be
/// split across: ceil(required_d / tau). Each slot then carries S/n bits.
long fragment_packet(double required_d_s, double tau_s);

std::vector<SlotTrace> run_slotted(const ScenarioConfig& cfg, const Topology& topology,
                                   PolicyKind policy, long num_slots, Rng& rng);

long covert_violation_count(const std::vector<SlotTrace>& traces);

/// Time-averaged (1/K) sum of the recorded per-slot AoI samples.
double average_aoi_of_trace(const std::vector<SlotTrace>& traces);

}  // namespace covertaoi
