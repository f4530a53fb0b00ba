#pragma once

#include <cstdint>
#include <vector>

#include "credal/dist.hpp"

namespace credal {

struct GaussianParam {
    double mu = 0.0;
    double tau2 = 1.0;  // variance, > 0

    GaussianParam(double mu, double tau2);
};

/// Credal set of Gaussians given by its extreme components.
struct GaussianFGCS {
    std::vector<GaussianParam> params;
    int round = 0;

    explicit GaussianFGCS(std::vector<GaussianParam> params, int round = 0);
};

/// Batch of unit-variance normal observations, regenerable from its seed.
struct DataBatch {
    int n = 0;
    double sum_x = 0.0;
    double theta_star = 0.0;
    std::uint64_t seed = 0;

    /// Draws n samples from N(theta_star, 1) with a Box-Muller transform over
    /// the deterministic Rng stream.
    static DataBatch generate(int n, double theta_star, std::uint64_t seed);
};

/// Conjugate normal-mean update for a unit-variance likelihood:
/// tau2' = 1 / (1/tau2 + n), mu' = tau2' * (mu/tau2 + sum_x).
GaussianParam conjugate_update(const GaussianParam& p, const DataBatch& batch);

struct IllustrationRound {
    int round = 0;
    /// Mean over components of the squared parameter step |(mu, tau2) delta|^2.
    double avg_sq_diff = 0.0;
    std::vector<GaussianParam> params;
};

struct IllustrationTrace {
    std::vector<IllustrationRound> rounds;
    int batch_n = 0;
    std::uint64_t seed = 0;
    bool fresh_batch_per_round = false;
};

/// Repeatedly applies the conjugate update to every extreme component,
/// recording the averaged squared parameter difference per round. By default
/// the same batch is reused each round; fresh_batch_per_round redraws data
/// every round (an extension beyond the reference setup, flagged in output).
IllustrationTrace run_illustration(const GaussianFGCS& init, const DataBatch& batch, int rounds,
                                   bool fresh_batch_per_round = false);

/// Gaussian density evaluated on a strictly increasing grid, clamped below at
/// floor and renormalized.
PositiveDist discretize(const GaussianParam& p, const std::vector<double>& grid, double floor);

}  // namespace credal
