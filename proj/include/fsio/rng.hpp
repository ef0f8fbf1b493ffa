#pragma once

#include <cstdint>
#include <random>

namespace fsio {

/// Deterministic uniform deviates on top of mt19937_64.
///
/// std::uniform_real_distribution is implementation-defined, so tests and
/// calibration draw bits directly; results are reproducible across builds.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t index(std::uint64_t n) { return gen_() % n; }

private:
    std::mt19937_64 gen_;
};

} // namespace fsio
