#pragma once

#include <cstdint>
#include <vector>

#include "credal/dist.hpp"

namespace credal {

/// Deterministic PRNG wrapper. All Monte Carlo entry points derive per-trial
/// streams via for_trial(seed, index), so results never depend on scheduling.
/// Uniform doubles are built from raw 64-bit output rather than
/// std::uniform_real_distribution to keep streams identical across standard
/// library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    static Rng for_trial(std::uint64_t seed, std::uint64_t trial);

    std::uint64_t next_u64();

    /// Uniform in [0, 1).
    double uniform();
    double uniform(double lo, double hi);

    /// Standard normal via Box-Muller; consumes exactly two uniforms.
    double normal();

    /// Symmetric Dirichlet(1) sample of the given dimension.
    std::vector<double> dirichlet(std::size_t dim);

private:
    std::uint64_t state_;
};

/// Dirichlet(1) weights clamped to a positive floor and renormalized;
/// the recorded floor is the tight post-normalization minimum.
PositiveDist random_positive_dist(Rng& rng, std::size_t dim, double clamp_floor = 1e-6);

}  // namespace credal
