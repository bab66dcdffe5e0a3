#include "covertaoi/noma.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace covertaoi {

namespace {

constexpr double kLog2e = 1.4426950408889634;  // log2(e)

double tail_sum(const std::vector<double>& v, std::size_t from) {
    double s = 0.0;
    for (std::size_t j = from; j < v.size(); ++j) s += v[j];
    return s;
}

}  // namespace

std::vector<std::size_t> sic_order(const std::vector<double>& gains) {
    for (double g : gains)
        if (!(g > 0)) throw std::domain_error("sic_order: gains must be > 0");
    std::vector<std::size_t> idx(gains.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return gains[a] < gains[b]; });
    return idx;
}

double rate(std::size_t k, const PowerAllocation& p, const std::vector<double>& sorted_gains,
            double sigma2) {
    if (k >= p.powers_w.size() || p.powers_w.size() != sorted_gains.size())
        throw std::invalid_argument("rate: index/size mismatch");
    const double h = sorted_gains[k];
    const double interference = h * tail_sum(p.powers_w, k + 1);
    return std::log2(1.0 + h * p.powers_w[k] / (interference + sigma2));
}

RateVector rate_vector(const PowerAllocation& p, const std::vector<double>& sorted_gains,
                       double sigma2) {
    RateVector r(p.powers_w.size());
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = rate(k, p, sorted_gains, sigma2);
    return r;
}

double linearized_rate(std::size_t k, const PowerAllocation& p, const PowerAllocation& anchor,
                       const std::vector<double>& sorted_gains, double sigma2) {
    if (k >= p.powers_w.size() || p.powers_w.size() != sorted_gains.size() ||
        anchor.powers_w.size() != p.powers_w.size())
        throw std::invalid_argument("linearized_rate: index/size mismatch");
    const double h = sorted_gains[k];
    const double own_term = std::log2(h * tail_sum(p.powers_w, k) + sigma2);
    const double anchor_interf = h * tail_sum(anchor.powers_w, k + 1) + sigma2;
    const double slope = h * kLog2e / anchor_interf;
    double lin = own_term - std::log2(anchor_interf);
    for (std::size_t j = k + 1; j < p.powers_w.size(); ++j)
        lin -= slope * (p.powers_w[j] - anchor.powers_w[j]);
    return lin;
}

}  // namespace covertaoi
