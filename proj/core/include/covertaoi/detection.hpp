// detection.hpp - Willie's radiometer analysis under bounded log-uniform
// noise uncertainty: error probabilities, the optimal threshold, and the
// covert power cap obtained by inverting the minimum total error rate.
//
// Everything here is closed form; no per-sample signal is simulated.

#pragma once

namespace covertaoi {

/// Willie's noise power is log-uniform on [nominal/mu, nominal*mu].
struct NoiseUncertainty {
    double nominal_w;  // sigma_w^2 nominal (watts)
    double mu;         // uncertainty factor, linear, > 1
};

struct DetectionResult {
    double optimal_threshold_w;  // theta*, radiometer threshold minimizing xi
    double min_total_error;      // xi*, in [0, 1]
};

/// Density of Willie's true noise power at x (1/watts).
double noise_pdf(double x, const NoiseUncertainty& nu);

/// P{decide transmission | silence} for threshold theta.
double false_alarm(double theta, const NoiseUncertainty& nu);

/// P{decide silence | transmission at total power pa over gain h_aw}.
double miss_detection(double theta, double pa, double h_aw, const NoiseUncertainty& nu);

/// xi(theta) = false_alarm + miss_detection.
double total_error(double theta, double pa, double h_aw, const NoiseUncertainty& nu);

/// Global minimizer of total_error over theta.
/// theta* = pa*h_aw + nominal/mu;
/// xi* = ln(mu*nominal / theta*) / (2 ln mu), clamped to [0, 1].
DetectionResult optimal_detection(double pa, double h_aw, const NoiseUncertainty& nu);

/// Largest total power with xi*(pa) >= 1 - eps_w:
///   nominal * (mu^(2 eps_w - 1) - 1/mu) / h_aw, floored at 0.
double covert_power_cap(double h_aw, const NoiseUncertainty& nu, double eps_w);

}  // namespace covertaoi
