#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "covertaoi/detection.hpp"
#include "covertaoi/rng.hpp"

using namespace covertaoi;

namespace {

// Composite Simpson quadrature, test-side oracle.
double simpson(double lo, double hi, int n, const NoiseUncertainty& nu) {
    const double h = (hi - lo) / n;
    double s = noise_pdf(lo, nu) + noise_pdf(hi, nu);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * noise_pdf(lo + i * h, nu);
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("noise_pdf support and values") {
    const NoiseUncertainty nu{1.0, std::exp(1.0)};
    CHECK(noise_pdf(0.1, nu) == 0.0);  // below 1/e
    CHECK(noise_pdf(10.0, nu) == 0.0); // above e
    CHECK(noise_pdf(1.0, nu) == doctest::Approx(0.5).epsilon(1e-15));  // 1/(2 sigma^2) at x = sigma^2, mu = e
}

TEST_CASE("noise_pdf integrates to one") {
    const NoiseUncertainty a{1.0, std::exp(1.0)};
    CHECK(std::abs(simpson(1.0 / a.mu, a.mu, 1 << 16, a) - 1.0) < 1e-9);
    const NoiseUncertainty b{1e-12, 1.9952623149688795};
    CHECK(std::abs(simpson(b.nominal_w / b.mu, b.nominal_w * b.mu, 1 << 16, b) - 1.0) < 1e-9);
}

TEST_CASE("false_alarm boundary values") {
    const NoiseUncertainty nu{1e-12, 3.0};
    CHECK(false_alarm(nu.nominal_w / nu.mu, nu) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(false_alarm(nu.nominal_w * nu.mu, nu) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(false_alarm(nu.nominal_w, nu) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(false_alarm(nu.nominal_w / nu.mu / 2.0, nu) == 1.0);
    CHECK(false_alarm(nu.nominal_w * nu.mu * 2.0, nu) == 0.0);
}

TEST_CASE("false_alarm agrees with Monte Carlo draws from the noise pdf") {
    const NoiseUncertainty nu{1e-12, 2.0};
    Rng rng(5);
    const double theta = 1.3e-12;
    const int n = 200000;
    int above = 0;
    for (int i = 0; i < n; ++i) {
        // Inverse-CDF draw: x = (nominal/mu) * mu^(2u).
        const double x = nu.nominal_w / nu.mu * std::pow(nu.mu, 2.0 * rng.uniform01());
        if (x >= theta) ++above;
    }
    const double p = false_alarm(theta, nu);
    const double se = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs(static_cast<double>(above) / n - p) < 4.0 * se);
}

TEST_CASE("miss_detection boundaries and the p_a = 0 identity") {
    const NoiseUncertainty nu{1e-12, 3.0};
    const double pa = 2e-10, h = 1e-3;
    const double ph = pa * h;
    CHECK(miss_detection(ph + nu.nominal_w / nu.mu, pa, h, nu) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(miss_detection(ph + nu.nominal_w * nu.mu, pa, h, nu) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(miss_detection(ph / 2.0, pa, h, nu) == 0.0);

    // With no transmission, miss = 1 - false alarm everywhere in the band.
    for (int i = 0; i <= 100; ++i) {
        const double theta =
            nu.nominal_w / nu.mu + (nu.nominal_w * nu.mu - nu.nominal_w / nu.mu) * i / 100.0;
        CHECK(miss_detection(theta, 0.0, h, nu) ==
              doctest::Approx(1.0 - false_alarm(theta, nu)).epsilon(1e-12));
    }
}

TEST_CASE("total_error piecewise tails and the optimum cross-check") {
    const NoiseUncertainty nu{1e-12, 2.5};
    const double pa = 1e-10, h = 5e-3;
    CHECK(total_error(nu.nominal_w / nu.mu * 0.5, pa, h, nu) == doctest::Approx(1.0));
    CHECK(total_error(pa * h + nu.nominal_w * nu.mu * 2.0, pa, h, nu) == doctest::Approx(1.0));

    const auto det = optimal_detection(pa, h, nu);
    CHECK(total_error(det.optimal_threshold_w, pa, h, nu) ==
          doctest::Approx(det.min_total_error).epsilon(1e-12));
}

TEST_CASE("optimal_detection closed form and degenerate points") {
    const NoiseUncertainty nu{1e-12, 2.0};
    const double h = 1e-4;

    const auto silent = optimal_detection(0.0, h, nu);
    CHECK(silent.min_total_error == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(silent.optimal_threshold_w == doctest::Approx(nu.nominal_w / nu.mu).epsilon(1e-12));

    // p_a h = nominal (mu - 1/mu) is the xi* = 0 point.
    const double pa0 = nu.nominal_w * (nu.mu - 1.0 / nu.mu) / h;
    CHECK(optimal_detection(pa0, h, nu).min_total_error == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(optimal_detection(pa0 * 2.0, h, nu).min_total_error == 0.0);  // clamped
}

TEST_CASE("grid search confirms the optimal threshold closed form on random instances") {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const NoiseUncertainty nu{std::pow(10.0, rng.uniform(-14.0, -10.0)),
                                  std::pow(10.0, rng.uniform(0.05, 0.8))};
        const double h = std::pow(10.0, rng.uniform(-8.0, -4.0));
        const double pa = rng.uniform(0.05, 0.9) * nu.nominal_w * (nu.mu - 1.0 / nu.mu) / h;

        const auto det = optimal_detection(pa, h, nu);
        const double hi = 2.0 * (pa * h + nu.nominal_w * nu.mu);
        const int n = 100000;
        double best = 2.0, best_theta = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double theta = hi * i / n;
            const double xi = total_error(theta, pa, h, nu);
            if (xi < best) {
                best = xi;
                best_theta = theta;
            }
        }
        CHECK(std::abs(best_theta - det.optimal_threshold_w) <= hi / n * 1.0001);
        CHECK(std::abs(best - det.min_total_error) < 1e-3);
    }
}

TEST_CASE("monotonicity of the error pieces") {
    const NoiseUncertainty nu{1e-12, 3.0};
    const double pa = 3e-10, h = 1e-3;
    double prev_fa = 2.0, prev_md = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double theta = (pa * h + nu.nominal_w * nu.mu) * 1.2 * i / 200.0;
        const double fa = false_alarm(theta, nu);
        const double md = miss_detection(theta, pa, h, nu);
        CHECK(fa <= prev_fa + 1e-12);
        CHECK(md >= prev_md - 1e-12);
        prev_fa = fa;
        prev_md = md;
    }
}

TEST_CASE("covert_power_cap endpoints, round trip, bisection oracle") {
    const NoiseUncertainty nu{1e-12, 2.0};
    const double h = 2e-5;

    CHECK(covert_power_cap(h, nu, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(covert_power_cap(h, nu, 1.0) ==
          doctest::Approx(nu.nominal_w * (nu.mu - 1.0 / nu.mu) / h).epsilon(1e-12));

    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const double eps = rng.uniform(0.05, 0.995);
        const double gain = std::pow(10.0, rng.uniform(-8.0, -3.0));
        const double mu = std::pow(10.0, rng.uniform(0.05, 1.0));
        const NoiseUncertainty u{1e-12, mu};
        const double cap = covert_power_cap(gain, u, eps);
        REQUIRE(cap > 0.0);
        CHECK(optimal_detection(cap, gain, u).min_total_error ==
              doctest::Approx(1.0 - eps).epsilon(1e-9));
        CHECK(optimal_detection(cap * 1.01, gain, u).min_total_error < 1.0 - eps);

        // Bisection on xi*(p) = 1 - eps, independent of the closed form.
        double lo = 0.0, hi2 = u.nominal_w * (u.mu - 1.0 / u.mu) / gain;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi2);
            if (optimal_detection(mid, gain, u).min_total_error >= 1.0 - eps) lo = mid;
            else hi2 = mid;
        }
        CHECK(cap == doctest::Approx(lo).epsilon(1e-9));
    }
}

TEST_CASE("precondition violations throw") {
    const NoiseUncertainty nu{1e-12, 2.0};
    CHECK_THROWS_AS(optimal_detection(-1e-9, 1e-4, nu), std::domain_error);
    CHECK_THROWS_AS(optimal_detection(1e-9, 0.0, nu), std::domain_error);
    CHECK_THROWS_AS(covert_power_cap(0.0, nu, 0.5), std::domain_error);
    CHECK_THROWS_AS(covert_power_cap(1e-4, nu, 1.5), std::domain_error);
    const NoiseUncertainty bad{1e-12, 0.9};
    CHECK_THROWS_AS(false_alarm(1e-12, bad), std::domain_error);
}
