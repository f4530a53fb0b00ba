#include "credal/rng.hpp"

#include <cmath>

namespace credal {

namespace {

// splitmix64: used both as the generator and to mix (seed, trial) pairs.
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : state_(seed) {
    // One warmup step so seed 0 does not start from the raw increment.
    (void)splitmix64(state_);
}

Rng Rng::for_trial(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t s = seed;
    std::uint64_t mixed = splitmix64(s) ^ (trial * 0xd6e8feb86659fd93ULL);
    return Rng(splitmix64(mixed));
}

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::vector<double> Rng::dirichlet(std::size_t dim) {
    std::vector<double> w(dim);
    double sum = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        double u = uniform();
        while (u <= 0.0) u = uniform();
        w[i] = -std::log(u);
        sum += w[i];
    }
    for (double& v : w) v /= sum;
    return w;
}

PositiveDist random_positive_dist(Rng& rng, std::size_t dim, double clamp_floor) {
    std::vector<double> w = rng.dirichlet(dim);
    double sum = 0.0;
    for (double& v : w) {
        if (v < clamp_floor) v = clamp_floor;
        sum += v;
    }
    for (double& v : w) v /= sum;
    return PositiveDist::with_tight_floor(std::move(w));
}

}  // namespace credal
