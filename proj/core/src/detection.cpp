#include "covertaoi/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covertaoi {

namespace {

void check(const NoiseUncertainty& nu) {
    if (!(nu.nominal_w > 0)) throw std::domain_error("NoiseUncertainty: nominal must be > 0");
    if (!(nu.mu > 1)) throw std::domain_error("NoiseUncertainty: mu must be > 1");
}

}  // namespace

double noise_pdf(double x, const NoiseUncertainty& nu) {
    check(nu);
    if (!(x >= 0)) throw std::domain_error("noise_pdf: x must be >= 0");
    const double lo = nu.nominal_w / nu.mu;
    const double hi = nu.nominal_w * nu.mu;
    if (x < lo || x > hi) return 0.0;
    return 1.0 / (2.0 * std::log(nu.mu) * x);
}

double false_alarm(double theta, const NoiseUncertainty& nu) {
    check(nu);
    if (!(theta >= 0)) throw std::domain_error("false_alarm: theta must be >= 0");
    const double lo = nu.nominal_w / nu.mu;
    const double hi = nu.nominal_w * nu.mu;
    if (theta < lo) return 1.0;
    if (theta > hi) return 0.0;
    // kappa_1
    return std::log(hi / theta) / (2.0 * std::log(nu.mu));
}

double miss_detection(double theta, double pa, double h_aw, const NoiseUncertainty& nu) {
    check(nu);
    if (!(theta >= 0)) throw std::domain_error("miss_detection: theta must be >= 0");
    if (!(pa >= 0)) throw std::domain_error("miss_detection: pa must be >= 0");
    if (!(h_aw > 0)) throw std::domain_error("miss_detection: h_aw must be > 0");
    const double rx = pa * h_aw;
    const double lo = rx + nu.nominal_w / nu.mu;
    const double hi = rx + nu.nominal_w * nu.mu;
    if (theta < lo) return 0.0;
    if (theta > hi) return 1.0;
    // kappa_2
    return std::log(nu.mu * (theta - rx) / nu.nominal_w) / (2.0 * std::log(nu.mu));
}

double total_error(double theta, double pa, double h_aw, const NoiseUncertainty& nu) {
    return false_alarm(theta, nu) + miss_detection(theta, pa, h_aw, nu);
}

DetectionResult optimal_detection(double pa, double h_aw, const NoiseUncertainty& nu) {
    check(nu);
    if (!(pa >= 0)) throw std::domain_error("optimal_detection: pa must be >= 0");
    if (!(h_aw > 0)) throw std::domain_error("optimal_detection: h_aw must be > 0");
    DetectionResult r;
    r.optimal_threshold_w = pa * h_aw + nu.nominal_w / nu.mu;
    // The closed form goes negative once pa*h_aw exceeds
    // nominal*(mu - 1/mu); there the false-alarm and miss-detection
    // bands separate and the true minimum of xi is 0.
    const double xi = std::log(nu.mu * nu.nominal_w / r.optimal_threshold_w) / (2.0 * std::log(nu.mu));
    r.min_total_error = std::clamp(xi, 0.0, 1.0);
    return r;
}

double covert_power_cap(double h_aw, const NoiseUncertainty& nu, double eps_w) {
    check(nu);
    if (!(h_aw > 0)) throw std::domain_error("covert_power_cap: h_aw must be > 0");
    if (!(eps_w >= 0 && eps_w <= 1)) throw std::domain_error("covert_power_cap: eps_w must be in [0,1]");
    const double cap = nu.nominal_w * (std::pow(nu.mu, 2.0 * eps_w - 1.0) - 1.0 / nu.mu) / h_aw;
    return std::max(cap, 0.0);
}

}  // namespace covertaoi
