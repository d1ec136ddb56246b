#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace camoeval::detail {

// splitmix64 finalizer; used to derive independent per-sample streams from
// the master seed so parallel and serial runs agree bit for bit.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// mt19937_64 with hand-rolled bounded/Gaussian draws: std::*_distribution is
// implementation-defined, and reports must reproduce across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Unbiased draw from [0, n) by rejection.
    std::uint64_t bounded(std::uint64_t n) {
        for (;;) {
            const std::uint64_t x = engine_();
            const std::uint64_t r = x % n;
            if (x - r <= ~std::uint64_t{0} - (n - 1)) return r;
        }
    }

    // Uniform in (0, 1].
    double unit() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

    // Standard normal via Box-Muller.
    double gaussian() {
        const double u1 = unit();
        const double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace camoeval::detail
