#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "credal/rules.hpp"

namespace credal {

enum class MetricKind { TvHausdorff, FiniteHilbert, Interval };

std::string metric_name(MetricKind m);
MetricKind metric_from_name(const std::string& name);

/// Distance between credal sets under the named metric. FiniteHilbert treats
/// the extreme lists as finite point sets (all extremes must be strictly
/// positive).
double credal_distance(const FGCS& a, const FGCS& b, MetricKind m);

struct OrbitStep {
    int n = 0;
    /// Distance to the previous iterate; absent at step 0.
    std::optional<double> d_prev;
    /// Distance to the image of this iterate: the fixed-point residual.
    double d_fix = 0.0;
    /// Full set summary: extreme weight lists for credal orbits, or the
    /// interval endpoints for interval orbits.
    std::vector<std::vector<double>> extremes;
    std::optional<IntervalCredal> interval;
};

struct OrbitTrace {
    std::vector<OrbitStep> steps;
    bool converged = false;
    int iterations = 0;
    std::string metric;
    double tol = 0.0;
};

/// Repeated application of the rule, recording successive and residual
/// distances. Stops when d_fix < tol (converged) or after max_iter steps.
/// Deterministic: identical inputs produce identical traces.
OrbitTrace iterate(const CredalRule& rule, const FGCS& start, double tol, int max_iter,
                   MetricKind metric);
OrbitTrace iterate(const IntervalRule& rule, const IntervalCredal& start, double tol,
                   int max_iter);

struct RateFit {
    /// Geometric ratio fitted by log-linear least squares on d_prev.
    double rho_hat = 0.0;
    double r_squared = 0.0;
    double tau_bound = 0.0;
    /// True iff d_n <= tau_bound^n * d_0 * (1 + 1e-6) and the per-step bound
    /// d_{n+1} <= tau_bound * d_n * (1 + 1e-6) hold at every recorded step,
    /// where d_n is the distance to the reference set.
    bool bound_satisfied = false;
    /// What d_n is measured against: "final_iterate" unless a closed-form
    /// fixed point was supplied.
    std::string reference;
    double max_step_ratio = 0.0;
};

/// Reference defaults to the final iterate of the trace.
RateFit fit_rate(const OrbitTrace& trace, double tau_bound);
RateFit fit_rate(const OrbitTrace& trace, double tau_bound, const FGCS& fixed_point);
RateFit fit_rate(const OrbitTrace& trace, double tau_bound, const IntervalCredal& fixed_point);

struct UniquenessReport {
    std::vector<OrbitTrace> traces;
    /// Distances between the limit sets, upper triangle by (i, j) pairs.
    std::vector<double> pairwise;
    double max_pairwise = 0.0;
    bool all_converged = false;
    /// all orbits converged and every pairwise limit distance < 10 * tol.
    bool pass = false;
};

UniquenessReport uniqueness_check(const CredalRule& rule, const std::vector<FGCS>& starts,
                                  double tol, int max_iter, MetricKind metric);
UniquenessReport uniqueness_check(const IntervalRule& rule,
                                  const std::vector<IntervalCredal>& starts, double tol,
                                  int max_iter);

struct SandwichStep {
    int n = 0;
    IntervalCredal lower{0.0, 1.0};
    IntervalCredal composed{0.0, 1.0};
    IntervalCredal upper{0.0, 1.0};
    bool inclusion_ok = true;
};

struct SandwichReport {
    std::vector<SandwichStep> steps;
    bool inclusion_all = true;
    IntervalCredal lower_limit{0.0, 1.0};
    IntervalCredal composed_limit{0.0, 1.0};
    IntervalCredal upper_limit{0.0, 1.0};
    bool limits_ordered = false;
    bool lower_converged = false;
    bool composed_converged = false;
    bool upper_converged = false;
    int iterations = 0;
};

/// Runs the lower-envelope orbit, the scheduled composition (the schedule is
/// cycled), and the upper-envelope orbit side by side, checking the interval
/// inclusion chain exactly at every step. Every rule must pass a randomized
/// nested-pair monotonicity probe before the run; a probe failure throws
/// MonotonicityError, an in-run inclusion failure throws SandwichViolation.
SandwichReport sandwich_run(const std::vector<std::shared_ptr<IntervalRule>>& rules,
                            const std::vector<int>& schedule, const IntervalCredal& start,
                            double tol, int max_iter, std::uint64_t probe_seed = 0,
                            int probe_pairs = 200);

}  // namespace credal
