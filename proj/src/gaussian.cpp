#include "credal/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "credal/rng.hpp"

namespace credal {

GaussianParam::GaussianParam(double mu_, double tau2_) : mu(mu_), tau2(tau2_) {
    if (!(tau2 > 0.0)) {
        throw ParameterError("GaussianParam requires tau2 > 0, got " + std::to_string(tau2));
    }
}

GaussianFGCS::GaussianFGCS(std::vector<GaussianParam> params_, int round_)
    : params(std::move(params_)), round(round_) {
    if (params.empty()) throw EmptyCredalError("GaussianFGCS requires at least one component");
}

DataBatch DataBatch::generate(int n, double theta_star, std::uint64_t seed) {
    if (n < 1) throw ParameterError("DataBatch requires n >= 1");
    Rng rng(seed);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += theta_star + rng.normal();
    return DataBatch{n, sum, theta_star, seed};
}

GaussianParam conjugate_update(const GaussianParam& p, const DataBatch& batch) {
    const double tau2_new = 1.0 / (1.0 / p.tau2 + batch.n);
    const double mu_new = tau2_new * (p.mu / p.tau2 + batch.sum_x);
    return GaussianParam(mu_new, tau2_new);
}

IllustrationTrace run_illustration(const GaussianFGCS& init, const DataBatch& batch, int rounds,
                                   bool fresh_batch_per_round) {
    if (rounds < 1) throw ParameterError("run_illustration requires rounds >= 1");

    IllustrationTrace trace;
    trace.batch_n = batch.n;
    trace.seed = batch.seed;
    trace.fresh_batch_per_round = fresh_batch_per_round;

    std::vector<GaussianParam> current = init.params;
    for (int t = 1; t <= rounds; ++t) {
        DataBatch round_batch = batch;
        if (fresh_batch_per_round) {
            // Per-round batches derived from the base seed; round 1 reproduces
            // the original batch.
            round_batch = DataBatch::generate(batch.n, batch.theta_star,
                                              batch.seed + static_cast<std::uint64_t>(t - 1));
        }
        double acc = 0.0;
        std::vector<GaussianParam> next;
        next.reserve(current.size());
        for (const GaussianParam& p : current) {
            const GaussianParam q = conjugate_update(p, round_batch);
            const double dmu = q.mu - p.mu;
            const double dt = q.tau2 - p.tau2;
            acc += dmu * dmu + dt * dt;
            next.push_back(q);
        }
        current = std::move(next);
        trace.rounds.push_back({t, acc / static_cast<double>(current.size()), current});
    }
    return trace;
}

PositiveDist discretize(const GaussianParam& p, const std::vector<double>& grid, double floor) {
    if (grid.size() < 2) throw ParameterError("discretize requires a grid with >= 2 points");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw ParameterError("discretize requires a strictly increasing grid");
        }
    }
    if (!(floor > 0.0)) throw ParameterError("discretize requires floor > 0");

    std::vector<double> w(grid.size());
    const double inv2t = 1.0 / (2.0 * p.tau2);
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = grid[i] - p.mu;
        w[i] = std::max(std::exp(-d * d * inv2t), floor);
        sum += w[i];
    }
    for (double& v : w) v /= sum;
    return PositiveDist::with_tight_floor(std::move(w));
}

}  // namespace credal
