#include "credal/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace credal {

namespace {

constexpr double kViolationSlack = 1e-10;

std::vector<std::vector<double>> raw_weights(const std::vector<PositiveDist>& pts) {
    std::vector<std::vector<double>> out;
    out.reserve(pts.size());
    for (const PositiveDist& p : pts) out.push_back(p.weights());
    return out;
}

}  // namespace

double birkhoff_tau(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta >= alpha) || !std::isfinite(beta)) {
        throw ParameterError("birkhoff_tau requires 0 < alpha <= beta < inf, got alpha=" +
                             std::to_string(alpha) + ", beta=" + std::to_string(beta));
    }
    return std::tanh(0.25 * std::log(beta / alpha));
}

ContractionReport verify_point_contraction(const Likelihood& ell, int trials,
                                           std::uint64_t seed) {
    if (trials < 1) throw ParameterError("verify_point_contraction requires trials >= 1");
    const std::size_t dim = ell.dim();

    ContractionReport report;
    report.tau_bound = birkhoff_tau(ell.alpha(), ell.beta());
    report.trials = trials;
    report.per_trial_before.reserve(trials);
    report.per_trial_after.reserve(trials);
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(t));
        const PositiveDist p = random_positive_dist(rng, dim);
        const PositiveDist q = random_positive_dist(rng, dim);
        const double before = hilbert_distance(p, q);
        const double after = hilbert_distance(bayes_tilt(p, ell), bayes_tilt(q, ell));
        report.per_trial_before.push_back(before);
        report.per_trial_after.push_back(after);
        if (after > report.tau_bound * before + kViolationSlack) ++report.violations;
        const double ratio = before > 0.0 ? after / before : 0.0;
        if (ratio > report.max_observed_ratio) {
            report.max_observed_ratio = ratio;
            report.worst_a = {p.weights()};
            report.worst_b = {q.weights()};
            report.worst_before = before;
            report.worst_after = after;
        }
    }
    return report;
}

ContractionReport verify_set_contraction(const std::vector<Likelihood>& likelihoods, int trials,
                                         std::uint64_t seed, int max_set_size) {
    if (trials < 1) throw ParameterError("verify_set_contraction requires trials >= 1");
    if (likelihoods.empty()) {
        throw ParameterError("verify_set_contraction requires at least one likelihood");
    }
    if (max_set_size < 1) throw ParameterError("verify_set_contraction: max_set_size >= 1");
    const std::size_t dim = likelihoods.front().dim();
    for (const Likelihood& ell : likelihoods) {
        if (ell.dim() != dim) throw DimensionError("verify_set_contraction: dim mismatch");
    }

    ContractionReport report;
    report.tau_bound = 0.0;
    for (const Likelihood& ell : likelihoods) {
        report.tau_bound = std::max(report.tau_bound, birkhoff_tau(ell.alpha(), ell.beta()));
    }
    report.trials = trials;

    auto sample_set = [&](Rng& rng) {
        const std::size_t n = 1 + rng.next_u64() % static_cast<std::uint64_t>(max_set_size);
        std::vector<PositiveDist> pts;
        pts.reserve(n);
        for (std::size_t i = 0; i < n; ++i) pts.push_back(random_positive_dist(rng, dim));
        return pts;
    };
    auto map_through = [&](const std::vector<PositiveDist>& pts) {
        std::vector<PositiveDist> images;
        images.reserve(pts.size() * likelihoods.size());
        for (const PositiveDist& p : pts) {
            for (const Likelihood& ell : likelihoods) images.push_back(bayes_tilt(p, ell));
        }
        return images;
    };

    report.per_trial_before.reserve(trials);
    report.per_trial_after.reserve(trials);
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(t));
        const std::vector<PositiveDist> a = sample_set(rng);
        const std::vector<PositiveDist> b = sample_set(rng);
        const double before = hausdorff_finite_hilbert(a, b);
        const double after = hausdorff_finite_hilbert(map_through(a), map_through(b));
        report.per_trial_before.push_back(before);
        report.per_trial_after.push_back(after);
        if (after > report.tau_bound * before + kViolationSlack) ++report.violations;
        const double ratio = before > 0.0 ? after / before : 0.0;
        if (ratio > report.max_observed_ratio) {
            report.max_observed_ratio = ratio;
            report.worst_a = raw_weights(a);
            report.worst_b = raw_weights(b);
            report.worst_before = before;
            report.worst_after = after;
        }
    }
    return report;
}

namespace {

template <typename Rule, typename Set, typename Sampler, typename Metric>
PsiEstimate estimate_psi_impl(const Rule& rule, const Sampler& sampler,
                              const std::vector<double>& t_grid, int pairs_per_bin,
                              std::uint64_t seed, int retry_factor, Metric metric) {
    if (pairs_per_bin < 1) throw ParameterError("estimate_psi requires pairs_per_bin >= 1");
    if (t_grid.empty()) throw ParameterError("estimate_psi requires a nonempty t grid");
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
        if (!(t_grid[j] > 0.0) || (j > 0 && !(t_grid[j] > t_grid[j - 1]))) {
            throw ParameterError("estimate_psi requires a strictly increasing positive t grid");
        }
    }

    // Pool of accepted pairs; bins are nested, so pairs found while filling a
    // small bin also count toward every larger one.
    std::vector<std::pair<double, double>> pool;  // (input distance, output distance)
    const double t_max = t_grid.back();
    Rng rng(seed);

    PsiEstimate est;
    est.t_grid = t_grid;
    est.pairs_per_bin = pairs_per_bin;
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
        const double t = t_grid[j];
        auto count_in_bin = [&] {
            int c = 0;
            for (const auto& pr : pool) {
                if (pr.first <= t) ++c;
            }
            return c;
        };
        long attempts = 0;
        const long budget = static_cast<long>(retry_factor) * pairs_per_bin;
        while (count_in_bin() < pairs_per_bin) {
            if (attempts >= budget) {
                throw SamplingError("estimate_psi: could not fill bin " + std::to_string(j) +
                                    " (t = " + std::to_string(t) + ") within " +
                                    std::to_string(budget) + " attempts");
            }
            ++attempts;
            const Set a = sampler(rng);
            const Set b = sampler(rng);
            const double d_in = metric(a, b);
            if (d_in <= t_max) {
                pool.emplace_back(d_in, metric(rule.apply(a), rule.apply(b)));
            }
        }
        double worst = 0.0;
        int found = 0;
        for (const auto& pr : pool) {
            if (pr.first <= t) {
                worst = std::max(worst, pr.second);
                ++found;
            }
        }
        est.psi_hat.push_back(worst);
        est.pairs_found.push_back(found);
    }
    est.psi_below_t = true;
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
        if (!(est.psi_hat[j] < t_grid[j])) est.psi_below_t = false;
    }
    return est;
}

}  // namespace

PsiEstimate estimate_psi(const CredalRule& rule, const FgcsSampler& sampler,
                         const std::vector<double>& t_grid, int pairs_per_bin,
                         std::uint64_t seed, int retry_factor) {
    return estimate_psi_impl<CredalRule, FGCS>(
        rule, sampler, t_grid, pairs_per_bin, seed, retry_factor,
        [](const FGCS& a, const FGCS& b) { return hausdorff_tv(a, b); });
}

PsiEstimate estimate_psi(const IntervalRule& rule, const IntervalSampler& sampler,
                         const std::vector<double>& t_grid, int pairs_per_bin,
                         std::uint64_t seed, int retry_factor) {
    return estimate_psi_impl<IntervalRule, IntervalCredal>(
        rule, sampler, t_grid, pairs_per_bin, seed, retry_factor,
        [](const IntervalCredal& a, const IntervalCredal& b) { return hausdorff_interval(a, b); });
}

}  // namespace credal
