// noma.hpp - PD-NOMA downlink rates with SIC ordering, plus the
// first-order concave lower bound on the rate used by the SCA solver.
//
// Users are indexed in ascending-gain SIC order: position k is
// interfered by positions k+1..K-1, so the strongest user decodes last
// and sees no interference.

#pragma once

#include <cstddef>
#include <vector>

namespace covertaoi {

/// Per-user transmit powers, aligned with the SIC order of the gains
/// they were computed against.
struct PowerAllocation {
    std::vector<double> powers_w;

    double total() const {
        double s = 0.0;
        for (double p : powers_w) s += p;
        return s;
    }
};

using RateVector = std::vector<double>;  // bits/s/Hz per user

/// Indices of `gains` sorted by ascending gain, stable on ties.
std::vector<std::size_t> sic_order(const std::vector<double>& gains);

/// Exact rate of the user at SIC position k (0-based):
///   log2(1 + h_k p_k / (h_k sum_{j>k} p_j + sigma2))
double rate(std::size_t k, const PowerAllocation& p, const std::vector<double>& sorted_gains,
            double sigma2);

RateVector rate_vector(const PowerAllocation& p, const std::vector<double>& sorted_gains,
                       double sigma2);

/// Concave global lower bound on rate(k, p), exact at p = anchor:
/// the interference log term is linearized at the anchor powers.
double linearized_rate(std::size_t k, const PowerAllocation& p, const PowerAllocation& anchor,
                       const std::vector<double>& sorted_gains, double sigma2);

}  // namespace covertaoi
