#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "credal/rules.hpp"

namespace credal {

/// Birkhoff contraction coefficient tanh(log(beta/alpha) / 4) for evidence
/// weights bounded in [alpha, beta]. Zero exactly when alpha == beta.
double birkhoff_tau(double alpha, double beta);

struct ContractionReport {
    double tau_bound = 0.0;
    double max_observed_ratio = 0.0;
    int trials = 0;
    /// Trials with after > tau_bound * before + 1e-10.
    int violations = 0;
    /// Input pair achieving the maximal after/before ratio (weight vectors;
    /// singletons for the point-level check).
    std::vector<std::vector<double>> worst_a;
    std::vector<std::vector<double>> worst_b;
    double worst_before = 0.0;
    double worst_after = 0.0;
    /// Per-trial distances, in trial order (feeds the CSV trace).
    std::vector<double> per_trial_before;
    std::vector<double> per_trial_after;
};

/// Samples random positive pairs, applies the Bayes tilt with the given
/// evidence weights, and measures Hilbert distances before and after against
/// the tanh bound. The report records whatever the measurement shows; it is a
/// measurement harness, not an assertion.
ContractionReport verify_point_contraction(const Likelihood& ell, int trials,
                                           std::uint64_t seed);

/// Same measurement at the set level: pairs of finite positive point sets,
/// mapped through the union of all K tilts, under the finite-set
/// Hilbert-Hausdorff distance, against tau = max_k tau_k.
ContractionReport verify_set_contraction(const std::vector<Likelihood>& likelihoods, int trials,
                                         std::uint64_t seed, int max_set_size = 5);

struct PsiEstimate {
    std::vector<double> t_grid;
    std::vector<double> psi_hat;
    int pairs_per_bin = 0;
    std::vector<int> pairs_found;
    /// psi_hat(t) < t at every grid point.
    bool psi_below_t = false;
};

using FgcsSampler = std::function<FGCS(Rng&)>;
using IntervalSampler = std::function<IntervalCredal(Rng&)>;

/// Empirical modulus of the rule: for each t, the max output distance over
/// rejection-sampled input pairs at distance <= t. Bins are cumulative, so
/// psi_hat is nondecreasing. This is a LOWER estimate of the true supremum:
/// psi_hat(t) >= t is a hard bound violation, psi_hat(t) < t is supporting
/// evidence only.
PsiEstimate estimate_psi(const CredalRule& rule, const FgcsSampler& sampler,
                         const std::vector<double>& t_grid, int pairs_per_bin,
                         std::uint64_t seed, int retry_factor = 1000);
PsiEstimate estimate_psi(const IntervalRule& rule, const IntervalSampler& sampler,
                         const std::vector<double>& t_grid, int pairs_per_bin,
                         std::uint64_t seed, int retry_factor = 1000);

}  // namespace credal
