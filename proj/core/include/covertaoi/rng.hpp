// rng.hpp - seeded random stream with portable draw semantics
//
// std::mt19937_64 output is pinned by the standard, but the std::
// distributions are not, so uniform and exponential draws are mapped
// from raw engine words here. Identical seeds give identical sequences
// on every platform.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace covertaoi {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_raw() { return engine_(); }

    // Uniform on the open interval (0, 1).
    double uniform01() {
        const std::uint64_t bits = engine_() >> 11;  // 53 random bits
        return (static_cast<double>(bits) + 0.5) * 0x1p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Unit-mean exponential, strictly positive.
    double exponential() { return -std::log(uniform01()); }

    // Independent stream for worker/trial `index`, derived from this
    // stream's seed without consuming state (splitmix64 mix).
    static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
        std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace covertaoi
