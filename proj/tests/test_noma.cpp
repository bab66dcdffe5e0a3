#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "covertaoi/noma.hpp"
#include "covertaoi/rng.hpp"

using namespace covertaoi;

TEST_CASE("sic_order sorts ascending, stable on ties") {
    CHECK(sic_order({1.0, 2.0, 3.0}) == std::vector<std::size_t>{0, 1, 2});
    CHECK(sic_order({3.0, 1.0, 2.0}) == std::vector<std::size_t>{1, 2, 0});
    CHECK(sic_order({2.0, 2.0, 1.0}) == std::vector<std::size_t>{2, 0, 1});
    CHECK(sic_order({5.0}) == std::vector<std::size_t>{0});
}

TEST_CASE("rate closed forms") {
    const double sigma2 = 1e-16;

    // Single user, empty interference sum.
    PowerAllocation p1{{2e-7}};
    const std::vector<double> g1{4e-9};
    CHECK(rate(0, p1, g1, sigma2) ==
          doctest::Approx(std::log2(1.0 + g1[0] * p1.powers_w[0] / sigma2)).epsilon(1e-14));

    // Zero power, zero rate.
    PowerAllocation pz{{0.0, 1e-7}};
    CHECK(rate(0, pz, {1e-9, 1e-8}, sigma2) == 0.0);

    // K = 3 equal powers: R_k = log2(1 + p / ((K-k-1) p + sigma2/h_k)).
    const double p = 5e-8;
    PowerAllocation pe{{p, p, p}};
    const std::vector<double> g{1e-9, 7e-9, 3e-8};
    for (std::size_t k = 0; k < 3; ++k) {
        const double expect = std::log2(1.0 + p / ((2.0 - k) * p + sigma2 / g[k]));
        CHECK(rate(k, pe, g, sigma2) == doctest::Approx(expect).epsilon(1e-14));
    }

    // Equal powers in ascending SIC order give ascending rates.
    const auto rv = rate_vector(pe, g, sigma2);
    CHECK(rv[0] <= rv[1]);
    CHECK(rv[1] <= rv[2]);
}

TEST_CASE("rate monotonicity in own and interferer power") {
    const double sigma2 = 1e-16;
    const std::vector<double> g{2e-9, 9e-9};
    PowerAllocation base{{3e-8, 6e-8}};

    PowerAllocation more_own = base;
    more_own.powers_w[0] *= 1.2;
    CHECK(rate(0, more_own, g, sigma2) > rate(0, base, g, sigma2));

    PowerAllocation more_interf = base;
    more_interf.powers_w[1] *= 1.2;
    CHECK(rate(0, more_interf, g, sigma2) < rate(0, base, g, sigma2));
    // Last user is unaffected by the first user's power.
    PowerAllocation more_first = base;
    more_first.powers_w[0] *= 5.0;
    CHECK(rate(1, more_first, g, sigma2) == doctest::Approx(rate(1, base, g, sigma2)).epsilon(1e-15));
}

TEST_CASE("linearized_rate is exact at the anchor and for the last user") {
    const double sigma2 = 1e-16;
    const std::vector<double> g{1e-9, 5e-9, 2e-8};
    PowerAllocation anchor{{2e-8, 3e-8, 5e-8}};
    for (std::size_t k = 0; k < 3; ++k)
        CHECK(std::abs(linearized_rate(k, anchor, anchor, g, sigma2) - rate(k, anchor, g, sigma2)) <
              1e-12);

    // k = K-1 has no interference: the bound is exact everywhere.
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        PowerAllocation p{{rng.uniform(0.0, 1e-7), rng.uniform(0.0, 1e-7), rng.uniform(0.0, 1e-7)}};
        CHECK(linearized_rate(2, p, anchor, g, sigma2) ==
              doctest::Approx(rate(2, p, g, sigma2)).epsilon(1e-12));
    }
}

TEST_CASE("linearized_rate globally lower-bounds the exact rate") {
    Rng rng(11);
    for (int t = 0; t < 10000; ++t) {
        const int K = 2 + static_cast<int>(rng.uniform01() * 5.0);
        std::vector<double> g(K);
        PowerAllocation p, anchor;
        for (int k = 0; k < K; ++k) {
            g[k] = std::pow(10.0, rng.uniform(-10.0, -7.0));
            p.powers_w.push_back(rng.uniform(0.0, 1e-7));
            anchor.powers_w.push_back(rng.uniform(0.0, 1e-7));
        }
        std::sort(g.begin(), g.end());
        const auto k = static_cast<std::size_t>(rng.uniform01() * K);
        CHECK(linearized_rate(k, p, anchor, g, 1e-16) <= rate(k, p, g, 1e-16) + 1e-9);
    }
}
