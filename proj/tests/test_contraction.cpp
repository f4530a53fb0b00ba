#include <cmath>
#include <memory>

#include <doctest.h>

#include "credal/contraction.hpp"

using namespace credal;

TEST_CASE("birkhoff_tau examples and shape") {
    CHECK(birkhoff_tau(2.0, 2.0) == 0.0);
    CHECK(birkhoff_tau(1.0, std::exp(4.0)) == doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
    CHECK(birkhoff_tau(1.0, 9.0) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(birkhoff_tau(0.0, 1.0), ParameterError);
    CHECK_THROWS_AS(birkhoff_tau(2.0, 1.0), ParameterError);

    double prev = -1.0;
    for (double ratio : {1.0, 1.5, 2.0, 5.0, 50.0, 1e6}) {
        const double tau = birkhoff_tau(1.0, ratio);
        CHECK(tau < 1.0);
        CHECK(tau > prev);
        prev = tau;
    }
}

// The Bayes tilt multiplies every ratio p_i/q_i by the same normalizing
// constant, so the Hilbert distance is preserved exactly. The harness below
// therefore measures ratio 1 and counts every nondegenerate trial as a
// violation of any tanh bound below 1; these tests pin that behavior down.
TEST_CASE("verify_point_contraction measures the tilt as a Hilbert isometry") {
    ContractionReport r = verify_point_contraction(Likelihood({1.0, 3.0}), 500, 42);
    CHECK(r.tau_bound == doctest::Approx(std::tanh(0.25 * std::log(3.0))));
    CHECK(r.trials == 500);
    CHECK(r.max_observed_ratio == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.violations == 500);
    CHECK(std::abs(r.worst_after - r.worst_before) <= 1e-12);
}

TEST_CASE("verify_point_contraction with constant evidence weights") {
    // Constant likelihood: the tau bound collapses to 0 while the tilt is the
    // identity, so distances are untouched.
    ContractionReport r = verify_point_contraction(Likelihood({2.0, 2.0, 2.0}), 200, 7);
    CHECK(r.tau_bound == 0.0);
    CHECK(r.max_observed_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.violations == 200);
}

TEST_CASE("verify_point_contraction is deterministic per seed") {
    ContractionReport a = verify_point_contraction(Likelihood({1.0, 2.0, 4.0}), 300, 11);
    ContractionReport b = verify_point_contraction(Likelihood({1.0, 2.0, 4.0}), 300, 11);
    CHECK(a.max_observed_ratio == b.max_observed_ratio);
    CHECK(a.violations == b.violations);
    CHECK(a.per_trial_before == b.per_trial_before);
    CHECK(a.per_trial_after == b.per_trial_after);

    ContractionReport c = verify_point_contraction(Likelihood({1.0, 2.0, 4.0}), 300, 12);
    CHECK(a.per_trial_before != c.per_trial_before);
}

TEST_CASE("verify_set_contraction: mapped unions are nonexpansive") {
    ContractionReport r =
        verify_set_contraction({Likelihood({1.0, 3.0}), Likelihood({2.0, 1.0})}, 300, 5, 3);
    CHECK(r.tau_bound == doctest::Approx(std::tanh(0.25 * std::log(3.0))));
    // Each tilt preserves distances, and a union of isometries cannot expand
    // the two-sided Hausdorff distance; it can contract when images overlap.
    CHECK(r.max_observed_ratio <= 1.0 + 1e-9);
    CHECK(r.max_observed_ratio > r.tau_bound);  // the tanh bound is not met
    CHECK(r.violations > 0);
    CHECK(static_cast<int>(r.per_trial_before.size()) == r.trials);
}

TEST_CASE("verify_set_contraction singleton sets reduce to the point case") {
    ContractionReport point = verify_point_contraction(Likelihood({1.0, 4.0}), 100, 3);
    ContractionReport set = verify_set_contraction({Likelihood({1.0, 4.0})}, 100, 3, 1);
    // Same trial streams draw the same pairs when the set size is forced to 1.
    CHECK(set.max_observed_ratio == doctest::Approx(point.max_observed_ratio).epsilon(1e-12));
}

TEST_CASE("estimate_psi on the anchor contraction") {
    const double gamma = 0.5;
    AnchorContractionRule rule(gamma, 0.5);
    IntervalSampler sampler = [](Rng& rng) {
        const double lo = rng.uniform();
        return IntervalCredal(lo, rng.uniform(lo, 1.0));
    };
    PsiEstimate est = estimate_psi(rule, sampler, {0.1, 0.2, 0.4}, 40, 9);

    REQUIRE(est.psi_hat.size() == 3);
    for (std::size_t j = 0; j < est.t_grid.size(); ++j) {
        CHECK(est.psi_hat[j] / est.t_grid[j] <= (1.0 - gamma) + 1e-9);
        if (j > 0) CHECK(est.psi_hat[j] >= est.psi_hat[j - 1]);  // cumulative bins
        CHECK(est.pairs_found[j] >= est.pairs_per_bin);
    }
    CHECK(est.psi_below_t);
}

TEST_CASE("estimate_psi flags the delta_shift discontinuity") {
    const double delta = 0.1;
    DeltaShiftRule rule(delta);
    // Sampler straddling the branch boundary hi = 1 - delta.
    IntervalSampler sampler = [delta](Rng& rng) {
        return IntervalCredal(0.2, rng.uniform(1.0 - delta - 0.02, 1.0 - delta + 0.02));
    };
    PsiEstimate est = estimate_psi(rule, sampler, {0.05}, 60, 13);
    CHECK(est.psi_hat[0] >= delta);
    CHECK_FALSE(est.psi_below_t);
}

TEST_CASE("estimate_psi raises SamplingError when a bin cannot be filled") {
    AnchorContractionRule rule(0.5, 0.5);
    int calls = 0;
    IntervalSampler far_apart = [&calls](Rng&) {
        // Alternates two fixed intervals at distance 0.9: no pair lands close.
        return (calls++ % 2 == 0) ? IntervalCredal(0.0, 0.05) : IntervalCredal(0.9, 0.95);
    };
    CHECK_THROWS_AS(estimate_psi(rule, far_apart, {0.01}, 1, 3, /*retry_factor=*/5),
                    SamplingError);
}

TEST_CASE("estimate_psi validates its grid") {
    AnchorContractionRule rule(0.5, 0.5);
    IntervalSampler sampler = [](Rng& rng) {
        const double lo = rng.uniform();
        return IntervalCredal(lo, rng.uniform(lo, 1.0));
    };
    CHECK_THROWS_AS(estimate_psi(rule, sampler, {}, 5, 1), ParameterError);
    CHECK_THROWS_AS(estimate_psi(rule, sampler, {0.2, 0.1}, 5, 1), ParameterError);
    CHECK_THROWS_AS(estimate_psi(rule, sampler, {0.1}, 0, 1), ParameterError);
}
