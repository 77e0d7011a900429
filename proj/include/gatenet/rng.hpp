// rng.hpp — Seeded random streams with platform-stable output.
//
// std::normal_distribution and std::uniform_real_distribution are
// implementation-defined, so sampling goes through explicit bit mappings.
// Identical seeds give identical streams on any conforming platform.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gatenet {

// SplitMix64 step, used to derive independent sub-stream seeds.
inline std::uint64_t split_mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Mix a seed with a stream label (restart index, iteration counter, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return split_mix64(seed ^ split_mix64(stream + 0x632be59bd9b4e019ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; caches the second variate.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u = 0.0;
        do {
            u = uniform();
        } while (u <= 0.0);
        const double r = std::sqrt(-2.0 * std::log(u));
        const double t = 2.0 * M_PI * uniform();
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace gatenet
