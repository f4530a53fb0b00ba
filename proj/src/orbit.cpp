#include "credal/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace credal {

namespace {

constexpr double kRateRelTol = 1e-6;

[[noreturn]] void rethrow_with_iteration(int n) {
    const std::string ctx = "iteration " + std::to_string(n) + ": ";
    try {
        throw;
    } catch (const EmptyEnvelopeError& e) {
        throw EmptyEnvelopeError(ctx + e.what());
    } catch (const AdditivityViolationError& e) {
        throw AdditivityViolationError(ctx + e.what(), e.extreme_index, e.k);
    } catch (const PositivityError& e) {
        throw PositivityError(ctx + e.what());
    } catch (const Error& e) {
        throw Error(ctx + e.what());
    }
}

std::vector<std::vector<double>> extreme_weights(const FGCS& set) {
    std::vector<std::vector<double>> out;
    out.reserve(set.size());
    for (const Dist& e : set.extremes()) out.push_back(e.weights());
    return out;
}

std::vector<PositiveDist> promote_all(const FGCS& set) {
    std::vector<PositiveDist> out;
    out.reserve(set.size());
    for (const Dist& e : set.extremes()) out.push_back(PositiveDist::with_tight_floor(e.weights()));
    return out;
}

FGCS fgcs_from_step(const OrbitStep& step) {
    std::vector<Dist> pts;
    pts.reserve(step.extremes.size());
    for (const auto& w : step.extremes) pts.emplace_back(w);
    return FGCS(std::move(pts), true);
}

void check_iter_params(double tol, int max_iter) {
    if (!(tol > 0.0)) throw ParameterError("iterate requires tol > 0");
    if (max_iter < 1) throw ParameterError("iterate requires max_iter >= 1");
}

template <typename Set, typename Apply, typename Distance, typename Summarize>
OrbitTrace iterate_impl(const Set& start, double tol, int max_iter, const std::string& metric,
                        Apply apply, Distance distance, Summarize summarize) {
    check_iter_params(tol, max_iter);
    OrbitTrace trace;
    trace.metric = metric;
    trace.tol = tol;

    Set current = start;
    Set image = [&] {
        try {
            return apply(current);
        } catch (...) {
            rethrow_with_iteration(0);
        }
    }();

    for (int n = 0;; ++n) {
        OrbitStep step;
        step.n = n;
        if (n > 0) step.d_prev = trace.steps.back().d_fix;  // d(P_n, P_{n-1}) by construction
        step.d_fix = distance(current, image);
        summarize(current, step);
        trace.steps.push_back(std::move(step));

        if (trace.steps.back().d_fix < tol) {
            trace.converged = true;
            trace.iterations = n;
            break;
        }
        if (n == max_iter) {
            trace.converged = false;
            trace.iterations = max_iter;
            break;
        }
        current = image;
        try {
            image = apply(current);
        } catch (...) {
            rethrow_with_iteration(n + 1);
        }
    }
    return trace;
}

}  // namespace

std::string metric_name(MetricKind m) {
    switch (m) {
        case MetricKind::TvHausdorff: return "tv_hausdorff";
        case MetricKind::FiniteHilbert: return "finite_hilbert";
        case MetricKind::Interval: return "interval";
    }
    throw ParameterError("unknown metric kind");
}

MetricKind metric_from_name(const std::string& name) {
    if (name == "tv_hausdorff") return MetricKind::TvHausdorff;
    if (name == "finite_hilbert") return MetricKind::FiniteHilbert;
    if (name == "interval") return MetricKind::Interval;
    throw ParameterError("unknown metric '" + name +
                         "' (expected tv_hausdorff | finite_hilbert | interval)");
}

double credal_distance(const FGCS& a, const FGCS& b, MetricKind m) {
    switch (m) {
        case MetricKind::TvHausdorff: return hausdorff_tv(a, b);
        case MetricKind::FiniteHilbert: return hausdorff_finite_hilbert(promote_all(a), promote_all(b));
        case MetricKind::Interval:
            throw ParameterError("interval metric does not apply to credal-set orbits");
    }
    throw ParameterError("unknown metric kind");
}

OrbitTrace iterate(const CredalRule& rule, const FGCS& start, double tol, int max_iter,
                   MetricKind metric) {
    if (metric == MetricKind::Interval) {
        throw ParameterError("iterate: interval metric requires an interval rule");
    }
    return iterate_impl(
        start, tol, max_iter, metric_name(metric),
        [&](const FGCS& s) { return rule.apply(s); },
        [&](const FGCS& a, const FGCS& b) { return credal_distance(a, b, metric); },
        [](const FGCS& s, OrbitStep& step) { step.extremes = extreme_weights(s); });
}

OrbitTrace iterate(const IntervalRule& rule, const IntervalCredal& start, double tol,
                   int max_iter) {
    return iterate_impl(
        start, tol, max_iter, metric_name(MetricKind::Interval),
        [&](const IntervalCredal& s) { return rule.apply(s); },
        [](const IntervalCredal& a, const IntervalCredal& b) { return hausdorff_interval(a, b); },
        [](const IntervalCredal& s, OrbitStep& step) { step.interval = s; });
}

namespace {

RateFit fit_rate_against(const OrbitTrace& trace, double tau_bound,
                         const std::vector<double>& d_to_ref, const std::string& reference) {
    int positive_prev = 0;
    for (const OrbitStep& s : trace.steps) {
        if (s.d_prev && *s.d_prev > 0.0) ++positive_prev;
    }
    if (positive_prev < 3) {
        throw TraceError("fit_rate requires at least 3 steps with positive d_prev, found " +
                         std::to_string(positive_prev));
    }

    // Log-linear least squares of d_prev against n.
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int m = 0;
    for (const OrbitStep& s : trace.steps) {
        if (!s.d_prev || !(*s.d_prev > 0.0)) continue;
        const double x = static_cast<double>(s.n);
        const double y = std::log(*s.d_prev);
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
        ++m;
    }
    const double denom = m * sxx - sx * sx;
    const double slope = denom != 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
    const double intercept = (sy - slope * sx) / m;

    double ss_res = 0.0, ss_tot = 0.0;
    const double mean_y = sy / m;
    for (const OrbitStep& s : trace.steps) {
        if (!s.d_prev || !(*s.d_prev > 0.0)) continue;
        const double y = std::log(*s.d_prev);
        const double fit = intercept + slope * static_cast<double>(s.n);
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - mean_y) * (y - mean_y);
    }

    RateFit fit;
    fit.rho_hat = std::exp(slope);
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.tau_bound = tau_bound;
    fit.reference = reference;

    bool ok = true;
    const double d0 = d_to_ref.front();
    double tau_pow = 1.0;
    for (std::size_t n = 0; n < d_to_ref.size(); ++n) {
        if (d_to_ref[n] > tau_pow * d0 * (1.0 + kRateRelTol) + 1e-15) ok = false;
        if (n + 1 < d_to_ref.size()) {
            if (d_to_ref[n + 1] > tau_bound * d_to_ref[n] * (1.0 + kRateRelTol) + 1e-15) ok = false;
            if (d_to_ref[n] > 0.0) {
                fit.max_step_ratio = std::max(fit.max_step_ratio, d_to_ref[n + 1] / d_to_ref[n]);
            }
        }
        tau_pow *= tau_bound;
    }
    fit.bound_satisfied = ok;
    return fit;
}

bool is_interval_trace(const OrbitTrace& trace) {
    return !trace.steps.empty() && trace.steps.front().interval.has_value();
}

}  // namespace

RateFit fit_rate(const OrbitTrace& trace, double tau_bound, const FGCS& fixed_point) {
    const MetricKind metric = metric_from_name(trace.metric);
    std::vector<double> d;
    d.reserve(trace.steps.size());
    for (const OrbitStep& s : trace.steps) {
        d.push_back(credal_distance(fgcs_from_step(s), fixed_point, metric));
    }
    return fit_rate_against(trace, tau_bound, d, "given");
}

RateFit fit_rate(const OrbitTrace& trace, double tau_bound, const IntervalCredal& fixed_point) {
    std::vector<double> d;
    d.reserve(trace.steps.size());
    for (const OrbitStep& s : trace.steps) d.push_back(hausdorff_interval(*s.interval, fixed_point));
    return fit_rate_against(trace, tau_bound, d, "given");
}

RateFit fit_rate(const OrbitTrace& trace, double tau_bound) {
    if (trace.steps.empty()) throw TraceError("fit_rate: empty trace");
    if (is_interval_trace(trace)) {
        RateFit f = fit_rate(trace, tau_bound, *trace.steps.back().interval);
        f.reference = "final_iterate";
        return f;
    }
    RateFit f = fit_rate(trace, tau_bound, fgcs_from_step(trace.steps.back()));
    f.reference = "final_iterate";
    return f;
}

UniquenessReport uniqueness_check(const CredalRule& rule, const std::vector<FGCS>& starts,
                                  double tol, int max_iter, MetricKind metric) {
    if (starts.size() < 2) throw ParameterError("uniqueness_check requires at least 2 starts");
    UniquenessReport report;
    std::vector<FGCS> limits;
    report.all_converged = true;
    for (const FGCS& s : starts) {
        OrbitTrace t = iterate(rule, s, tol, max_iter, metric);
        if (!t.converged) report.all_converged = false;
        limits.push_back(fgcs_from_step(t.steps.back()));
        report.traces.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < limits.size(); ++i) {
        for (std::size_t j = i + 1; j < limits.size(); ++j) {
            const double d = credal_distance(limits[i], limits[j], metric);
            report.pairwise.push_back(d);
            report.max_pairwise = std::max(report.max_pairwise, d);
        }
    }
    report.pass = report.all_converged && report.max_pairwise < 10.0 * tol;
    return report;
}

UniquenessReport uniqueness_check(const IntervalRule& rule,
                                  const std::vector<IntervalCredal>& starts, double tol,
                                  int max_iter) {
    if (starts.size() < 2) throw ParameterError("uniqueness_check requires at least 2 starts");
    UniquenessReport report;
    std::vector<IntervalCredal> limits;
    report.all_converged = true;
    for (const IntervalCredal& s : starts) {
        OrbitTrace t = iterate(rule, s, tol, max_iter);
        if (!t.converged) report.all_converged = false;
        limits.push_back(*t.steps.back().interval);
        report.traces.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < limits.size(); ++i) {
        for (std::size_t j = i + 1; j < limits.size(); ++j) {
            const double d = hausdorff_interval(limits[i], limits[j]);
            report.pairwise.push_back(d);
            report.max_pairwise = std::max(report.max_pairwise, d);
        }
    }
    report.pass = report.all_converged && report.max_pairwise < 10.0 * tol;
    return report;
}

SandwichReport sandwich_run(const std::vector<std::shared_ptr<IntervalRule>>& rules,
                            const std::vector<int>& schedule, const IntervalCredal& start,
                            double tol, int max_iter, std::uint64_t probe_seed,
                            int probe_pairs) {
    if (rules.empty()) throw ParameterError("sandwich_run requires at least one rule");
    if (schedule.empty()) throw ParameterError("sandwich_run requires a nonempty schedule");
    for (int idx : schedule) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= rules.size()) {
            throw ParameterError("sandwich_run: schedule index " + std::to_string(idx) +
                                 " out of range");
        }
    }
    check_iter_params(tol, max_iter);

    // Monotonicity gate: random nested pairs must stay nested through every
    // rule. A pass is a precondition check, not a proof.
    for (std::size_t r = 0; r < rules.size(); ++r) {
        for (int t = 0; t < probe_pairs; ++t) {
            Rng rng = Rng::for_trial(probe_seed, r * static_cast<std::uint64_t>(probe_pairs) + t);
            const double jlo = rng.uniform();
            const double jhi = rng.uniform(jlo, 1.0);
            const IntervalCredal outer(jlo, jhi);
            const double ilo = rng.uniform(jlo, jhi);
            const double ihi = rng.uniform(ilo, jhi);
            const IntervalCredal inner(ilo, ihi);
            if (!interval_includes(rules[r]->apply(outer), rules[r]->apply(inner), 1e-12)) {
                std::ostringstream msg;
                msg << "rule " << r << " (" << rules[r]->descriptor()
                    << ") is not monotone: nested pair [" << inner.lo << ", " << inner.hi
                    << "] within [" << outer.lo << ", " << outer.hi
                    << "] maps to non-nested images";
                throw MonotonicityError(msg.str());
            }
        }
    }

    auto [lower, upper] = envelope_maps(rules);

    SandwichReport report;
    IntervalCredal lo_set = start, comp_set = start, up_set = start;
    report.steps.push_back({0, lo_set, comp_set, up_set, true});

    for (int n = 1; n <= max_iter; ++n) {
        const IntervalCredal lo_next = lower->apply(lo_set);
        const IntervalCredal comp_next =
            rules[static_cast<std::size_t>(schedule[(n - 1) % schedule.size()])]->apply(comp_set);
        const IntervalCredal up_next = upper->apply(up_set);

        const bool ok = interval_includes(comp_next, lo_next) && interval_includes(up_next, comp_next);
        report.steps.push_back({n, lo_next, comp_next, up_next, ok});
        if (!ok) {
            report.inclusion_all = false;
            std::ostringstream msg;
            msg << "sandwich inclusion violated at step " << n << ": lower [" << lo_next.lo
                << ", " << lo_next.hi << "], composed [" << comp_next.lo << ", " << comp_next.hi
                << "], upper [" << up_next.lo << ", " << up_next.hi << "]";
            throw SandwichViolation(msg.str(), n);
        }

        const double d_lo = hausdorff_interval(lo_set, lo_next);
        const double d_comp = hausdorff_interval(comp_set, comp_next);
        const double d_up = hausdorff_interval(up_set, up_next);
        lo_set = lo_next;
        comp_set = comp_next;
        up_set = up_next;
        report.iterations = n;
        report.lower_converged = d_lo < tol;
        report.composed_converged = d_comp < tol;
        report.upper_converged = d_up < tol;
        if (report.lower_converged && report.composed_converged && report.upper_converged) break;
    }

    report.lower_limit = lo_set;
    report.composed_limit = comp_set;
    report.upper_limit = up_set;
    report.limits_ordered = interval_includes(report.composed_limit, report.lower_limit) &&
                            interval_includes(report.upper_limit, report.composed_limit);
    return report;
}

}  // namespace credal
