#include "credal/scenario.hpp"

#include <cinttypes>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <variant>

#include "credal/contraction.hpp"
#include "credal/gaussian.hpp"
#include "credal/orbit.hpp"
#include "credal/version.hpp"

namespace credal {

namespace {

// ---------------------------------------------------------------------------
// Structural helpers
// ---------------------------------------------------------------------------

[[noreturn]] void rethrow_with_key(const std::string& ctx) {
    const std::string prefix = "key '" + ctx + "': ";
    try {
        throw;
    } catch (const ParameterError& e) {
        throw ParameterError(prefix + e.what());
    } catch (const PositivityError& e) {
        throw PositivityError(prefix + e.what());
    } catch (const DimensionError& e) {
        throw DimensionError(prefix + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(prefix + e.what());
    } catch (const EmptyCredalError& e) {
        throw EmptyCredalError(prefix + e.what());
    } catch (const EmptyEvidenceError& e) {
        throw EmptyEvidenceError(prefix + e.what());
    } catch (const ScenarioError& e) {
        throw ScenarioError(prefix + e.what());
    } catch (const Error& e) {
        throw Error(prefix + e.what());
    }
}

void check_allowed_keys(const Json& j, const std::set<std::string>& allowed,
                        const std::string& ctx) {
    if (!j.is_object()) throw ScenarioError("'" + ctx + "' must be an object");
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) {
            throw ScenarioError("unknown key '" + item.key() + "' in '" + ctx + "'");
        }
    }
}

const Json& require_key(const Json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key)) throw ScenarioError("missing key '" + key + "' in '" + ctx + "'");
    return j.at(key);
}

double get_number(const Json& j, const std::string& ctx) {
    if (!j.is_number()) throw ScenarioError("'" + ctx + "' must be a number");
    return j.get<double>();
}

long get_integer(const Json& j, const std::string& ctx) {
    if (!j.is_number_integer()) throw ScenarioError("'" + ctx + "' must be an integer");
    return j.get<long>();
}

bool get_bool(const Json& j, const std::string& ctx) {
    if (!j.is_boolean()) throw ScenarioError("'" + ctx + "' must be a boolean");
    return j.get<bool>();
}

std::string get_string(const Json& j, const std::string& ctx) {
    if (!j.is_string()) throw ScenarioError("'" + ctx + "' must be a string");
    return j.get<std::string>();
}

std::vector<double> get_vector(const Json& j, const std::string& ctx) {
    if (!j.is_array() || j.empty()) throw ScenarioError("'" + ctx + "' must be a nonempty array");
    std::vector<double> v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        v.push_back(get_number(j[i], ctx + "[" + std::to_string(i) + "]"));
    }
    return v;
}

std::uint64_t get_seed(const Json& params) {
    if (!params.contains("seed")) return 0;
    const long s = get_integer(params.at("seed"), "seed");
    if (s < 0) throw ScenarioError("'seed' must be nonnegative");
    return static_cast<std::uint64_t>(s);
}

double get_tol(const Json& params, double fallback = 1e-9) {
    if (!params.contains("tol")) return fallback;
    const double t = get_number(params.at("tol"), "tol");
    if (!(t > 0.0)) throw ScenarioError("'tol' must be > 0");
    return t;
}

int get_max_iter(const Json& params, int fallback = 10000) {
    if (!params.contains("max_iter")) return fallback;
    const long m = get_integer(params.at("max_iter"), "max_iter");
    if (m < 1) throw ScenarioError("'max_iter' must be >= 1");
    return static_cast<int>(m);
}

// ---------------------------------------------------------------------------
// Domain-type parsers
// ---------------------------------------------------------------------------

Dist parse_dist(const Json& j, const std::string& ctx) {
    try {
        return Dist(get_vector(j, ctx));
    } catch (...) {
        rethrow_with_key(ctx);
    }
}

Likelihood parse_likelihood(const Json& j, const std::string& ctx) {
    try {
        return Likelihood(get_vector(j, ctx));
    } catch (...) {
        rethrow_with_key(ctx);
    }
}

std::vector<Likelihood> parse_likelihood_list(const Json& j, const std::string& ctx) {
    if (!j.is_array() || j.empty()) throw ScenarioError("'" + ctx + "' must be a nonempty array");
    std::vector<Likelihood> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(parse_likelihood(j[i], ctx + "[" + std::to_string(i) + "]"));
    }
    return out;
}

FGCS parse_fgcs(const Json& j, const std::string& ctx) {
    if (!j.is_array() || j.empty()) throw ScenarioError("'" + ctx + "' must be a nonempty array");
    std::vector<Dist> pts;
    for (std::size_t i = 0; i < j.size(); ++i) {
        pts.push_back(parse_dist(j[i], ctx + "[" + std::to_string(i) + "]"));
    }
    try {
        return reduce(pts);
    } catch (...) {
        rethrow_with_key(ctx);
    }
}

IntervalCredal parse_interval(const Json& j, const std::string& ctx) {
    if (!j.is_array() || j.size() != 2) {
        throw ScenarioError("'" + ctx + "' must be an array [lo, hi]");
    }
    try {
        return IntervalCredal(get_number(j[0], ctx + "[0]"), get_number(j[1], ctx + "[1]"));
    } catch (...) {
        rethrow_with_key(ctx);
    }
}

EvidenceClass parse_evidence(const Json& j, const std::string& ctx) {
    if (!j.is_array() || j.empty()) throw ScenarioError("'" + ctx + "' must be a nonempty array");
    std::vector<EvidenceItem> items;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string ictx = ctx + "[" + std::to_string(i) + "]";
        check_allowed_keys(j[i], {"label", "likelihoods"}, ictx);
        EvidenceItem item;
        item.label = get_string(require_key(j[i], "label", ictx), ictx + ".label");
        item.likelihoods = parse_likelihood_list(require_key(j[i], "likelihoods", ictx),
                                                 ictx + ".likelihoods");
        items.push_back(std::move(item));
    }
    try {
        return EvidenceClass(std::move(items));
    } catch (...) {
        rethrow_with_key(ctx);
    }
}

using AnyRule = std::variant<std::shared_ptr<CredalRule>, std::shared_ptr<IntervalRule>>;

AnyRule parse_rule(const Json& j, const std::string& ctx) {
    if (!j.is_object()) throw ScenarioError("'" + ctx + "' must be an object");
    const std::string type = get_string(require_key(j, "type", ctx), ctx + ".type");
    try {
        if (type == "cbdl") {
            check_allowed_keys(j, {"type", "likelihoods"}, ctx);
            return std::make_shared<CbdlRule>(
                parse_likelihood_list(require_key(j, "likelihoods", ctx), ctx + ".likelihoods"));
        }
        if (type == "pessimistic") {
            check_allowed_keys(j, {"type", "evidence"}, ctx);
            return std::make_shared<PessimisticRule>(
                parse_evidence(require_key(j, "evidence", ctx), ctx + ".evidence"));
        }
        if (type == "delta_shift") {
            check_allowed_keys(j, {"type", "delta"}, ctx);
            return std::static_pointer_cast<IntervalRule>(std::make_shared<DeltaShiftRule>(
                get_number(require_key(j, "delta", ctx), ctx + ".delta")));
        }
        if (type == "anchor_contraction") {
            check_allowed_keys(j, {"type", "gamma", "anchor"}, ctx);
            return std::static_pointer_cast<IntervalRule>(std::make_shared<AnchorContractionRule>(
                get_number(require_key(j, "gamma", ctx), ctx + ".gamma"),
                get_number(require_key(j, "anchor", ctx), ctx + ".anchor")));
        }
    } catch (const ScenarioError&) {
        throw;
    } catch (...) {
        rethrow_with_key(ctx);
    }
    throw ScenarioError("'" + ctx + ".type' must be one of cbdl | pessimistic | delta_shift | "
                        "anchor_contraction, got '" + type + "'");
}

std::shared_ptr<IntervalRule> require_interval_rule(const AnyRule& rule, const std::string& ctx) {
    if (const auto* p = std::get_if<std::shared_ptr<IntervalRule>>(&rule)) return *p;
    throw ScenarioError("'" + ctx + "' must be an interval rule (delta_shift or "
                        "anchor_contraction)");
}

// ---------------------------------------------------------------------------
// CSV assembly
// ---------------------------------------------------------------------------

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Csv {
public:
    explicit Csv(std::string header) { out_ += header + "\n"; }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ += ',';
            out_ += cells[i];
        }
        out_ += '\n';
    }
    std::string str() && { return std::move(out_); }

private:
    std::string out_;
};

Json orbit_steps_json(const OrbitTrace& trace) {
    Json steps = Json::array();
    for (const OrbitStep& s : trace.steps) {
        Json step;
        step["n"] = s.n;
        if (s.d_prev) step["d_prev"] = *s.d_prev;
        step["d_fix"] = s.d_fix;
        if (s.interval) {
            step["lo"] = s.interval->lo;
            step["hi"] = s.interval->hi;
        } else {
            step["extremes"] = s.extremes;
        }
        steps.push_back(std::move(step));
    }
    return steps;
}

std::string orbit_trace_csv(const OrbitTrace& trace) {
    const bool interval = !trace.steps.empty() && trace.steps.front().interval.has_value();
    Csv csv(interval ? "n,d_prev,d_fix,lo,hi" : "n,d_prev,d_fix,extreme_count");
    for (const OrbitStep& s : trace.steps) {
        std::vector<std::string> cells{std::to_string(s.n), s.d_prev ? fmt(*s.d_prev) : "",
                                       fmt(s.d_fix)};
        if (interval) {
            cells.push_back(fmt(s.interval->lo));
            cells.push_back(fmt(s.interval->hi));
        } else {
            cells.push_back(std::to_string(s.extremes.size()));
        }
        csv.row(cells);
    }
    return std::move(csv).str();
}

// ---------------------------------------------------------------------------
// Per-kind runners
// ---------------------------------------------------------------------------

struct KindOutput {
    bool pass = false;
    Json result;
    std::string trace_csv;
};

KindOutput run_iterate(const Json& params, bool execute) {
    check_allowed_keys(params, {"kind", "seed", "tol", "max_iter", "metric", "rule", "start"},
                       "scenario");
    const double tol = get_tol(params);
    const int max_iter = get_max_iter(params);
    const AnyRule rule = parse_rule(require_key(params, "rule", "scenario"), "rule");
    const Json& start = require_key(params, "start", "scenario");

    OrbitTrace trace;
    if (const auto* credal_rule = std::get_if<std::shared_ptr<CredalRule>>(&rule)) {
        check_allowed_keys(start, {"extremes"}, "start");
        const FGCS start_set = parse_fgcs(require_key(start, "extremes", "start"),
                                          "start.extremes");
        MetricKind metric = MetricKind::TvHausdorff;
        if (params.contains("metric")) {
            metric = metric_from_name(get_string(params.at("metric"), "metric"));
            if (metric == MetricKind::Interval) {
                throw ScenarioError("'metric' interval does not apply to credal rules");
            }
        }
        if (!execute) return {};
        trace = iterate(**credal_rule, start_set, tol, max_iter, metric);
    } else {
        check_allowed_keys(start, {"interval"}, "start");
        if (params.contains("metric") &&
            metric_from_name(get_string(params.at("metric"), "metric")) != MetricKind::Interval) {
            throw ScenarioError("interval rules use the 'interval' metric");
        }
        const IntervalCredal start_set = parse_interval(require_key(start, "interval", "start"),
                                                        "start.interval");
        if (!execute) return {};
        trace = iterate(*std::get<std::shared_ptr<IntervalRule>>(rule), start_set, tol, max_iter);
    }

    KindOutput out;
    out.pass = trace.converged;
    out.result["converged"] = trace.converged;
    out.result["iterations"] = trace.iterations;
    out.result["metric"] = trace.metric;
    out.result["final_d_fix"] = trace.steps.back().d_fix;
    out.result["steps"] = orbit_steps_json(trace);
    out.trace_csv = orbit_trace_csv(trace);
    return out;
}

KindOutput run_counterexample(const Json& params, bool execute) {
    check_allowed_keys(params, {"kind", "seed", "tol", "max_iter", "delta", "start"}, "scenario");
    const double tol = get_tol(params);
    const int max_iter = get_max_iter(params, 1000);
    double delta = 0.0;
    try {
        delta = get_number(require_key(params, "delta", "scenario"), "delta");
        (void)DeltaShiftRule(delta);  // range check
    } catch (...) {
        rethrow_with_key("delta");
    }
    const IntervalCredal start = parse_interval(require_key(params, "start", "scenario"), "start");
    if (!execute) return {};

    const DeltaShiftRule rule(delta);
    const OrbitTrace trace = iterate(rule, start, tol, max_iter);
    double min_d_fix = trace.steps.front().d_fix;
    for (const OrbitStep& s : trace.steps) min_d_fix = std::min(min_d_fix, s.d_fix);

    KindOutput out;
    // Non-convergence is the expected outcome for this kind.
    out.pass = !trace.converged;
    out.result["converged"] = trace.converged;
    out.result["expected_converged"] = false;
    out.result["iterations"] = trace.iterations;
    out.result["min_d_fix"] = min_d_fix;
    out.result["delta"] = delta;
    out.result["steps"] = orbit_steps_json(trace);
    out.trace_csv = orbit_trace_csv(trace);
    return out;
}

Json contraction_report_json(const ContractionReport& r) {
    Json j;
    j["tau_bound"] = r.tau_bound;
    j["trials"] = r.trials;
    j["violations"] = r.violations;
    j["max_observed_ratio"] = r.max_observed_ratio;
    Json worst;
    worst["a"] = r.worst_a;
    worst["b"] = r.worst_b;
    worst["before"] = r.worst_before;
    worst["after"] = r.worst_after;
    j["worst_case"] = std::move(worst);
    return j;
}

KindOutput run_contract(const Json& params, bool execute) {
    check_allowed_keys(params,
                       {"kind", "seed", "mode", "trials", "likelihood", "likelihoods",
                        "max_set_size"},
                       "scenario");
    const std::uint64_t seed = get_seed(params);
    const std::string mode = get_string(require_key(params, "mode", "scenario"), "mode");
    const long trials = get_integer(require_key(params, "trials", "scenario"), "trials");
    if (trials < 1) throw ScenarioError("'trials' must be >= 1");

    ContractionReport report;
    if (mode == "point") {
        const Likelihood ell =
            parse_likelihood(require_key(params, "likelihood", "scenario"), "likelihood");
        if (!execute) return {};
        report = verify_point_contraction(ell, static_cast<int>(trials), seed);
    } else if (mode == "set") {
        const std::vector<Likelihood> ells =
            parse_likelihood_list(require_key(params, "likelihoods", "scenario"), "likelihoods");
        int max_set_size = 5;
        if (params.contains("max_set_size")) {
            max_set_size = static_cast<int>(get_integer(params.at("max_set_size"), "max_set_size"));
        }
        if (!execute) return {};
        report = verify_set_contraction(ells, static_cast<int>(trials), seed, max_set_size);
    } else {
        throw ScenarioError("'mode' must be 'point' or 'set', got '" + mode + "'");
    }

    KindOutput out;
    out.pass = report.violations == 0;
    out.result = contraction_report_json(report);
    Csv csv("trial,before,after,ratio,violation");
    for (std::size_t t = 0; t < report.per_trial_before.size(); ++t) {
        const double before = report.per_trial_before[t];
        const double after = report.per_trial_after[t];
        const bool violation = after > report.tau_bound * before + 1e-10;
        csv.row({std::to_string(t), fmt(before), fmt(after),
                 fmt(before > 0.0 ? after / before : 0.0), violation ? "1" : "0"});
    }
    out.trace_csv = std::move(csv).str();
    return out;
}

KindOutput run_psi(const Json& params, bool execute) {
    check_allowed_keys(params,
                       {"kind", "seed", "rule", "t_grid", "pairs_per_bin", "sampler",
                        "retry_factor"},
                       "scenario");
    const std::uint64_t seed = get_seed(params);
    const std::vector<double> t_grid =
        get_vector(require_key(params, "t_grid", "scenario"), "t_grid");
    const long pairs = get_integer(require_key(params, "pairs_per_bin", "scenario"),
                                   "pairs_per_bin");
    if (pairs < 1) throw ScenarioError("'pairs_per_bin' must be >= 1");
    int retry_factor = 1000;
    if (params.contains("retry_factor")) {
        retry_factor = static_cast<int>(get_integer(params.at("retry_factor"), "retry_factor"));
        if (retry_factor < 1) throw ScenarioError("'retry_factor' must be >= 1");
    }
    const AnyRule rule = parse_rule(require_key(params, "rule", "scenario"), "rule");
    const Json& sampler = require_key(params, "sampler", "scenario");
    const std::string sampler_type =
        get_string(require_key(sampler, "type", "sampler"), "sampler.type");

    PsiEstimate est;
    if (const auto* credal_rule = std::get_if<std::shared_ptr<CredalRule>>(&rule)) {
        if (sampler_type != "fgcs") {
            throw ScenarioError("credal rules require sampler.type == 'fgcs'");
        }
        check_allowed_keys(sampler, {"type", "dim", "max_extremes"}, "sampler");
        const long dim = get_integer(require_key(sampler, "dim", "sampler"), "sampler.dim");
        const long max_ext =
            get_integer(require_key(sampler, "max_extremes", "sampler"), "sampler.max_extremes");
        if (dim < 2) throw ScenarioError("'sampler.dim' must be >= 2");
        if (max_ext < 1) throw ScenarioError("'sampler.max_extremes' must be >= 1");
        if (!execute) return {};
        est = estimate_psi(
            **credal_rule,
            [dim, max_ext](Rng& rng) {
                return random_fgcs(rng, static_cast<std::size_t>(dim),
                                   static_cast<std::size_t>(max_ext));
            },
            t_grid, static_cast<int>(pairs), seed, retry_factor);
    } else {
        if (sampler_type != "interval") {
            throw ScenarioError("interval rules require sampler.type == 'interval'");
        }
        check_allowed_keys(sampler, {"type"}, "sampler");
        if (!execute) return {};
        est = estimate_psi(
            *std::get<std::shared_ptr<IntervalRule>>(rule),
            [](Rng& rng) {
                const double lo = rng.uniform();
                return IntervalCredal(lo, rng.uniform(lo, 1.0));
            },
            t_grid, static_cast<int>(pairs), seed, retry_factor);
    }

    KindOutput out;
    out.pass = est.psi_below_t;
    out.result["note"] = "psi_hat is a sampled lower estimate of the true modulus";
    out.result["t_grid"] = est.t_grid;
    out.result["psi_hat"] = est.psi_hat;
    out.result["pairs_found"] = est.pairs_found;
    out.result["pairs_per_bin"] = est.pairs_per_bin;
    out.result["psi_below_t"] = est.psi_below_t;
    Csv csv("t,psi_hat,ratio,pairs");
    for (std::size_t j = 0; j < est.t_grid.size(); ++j) {
        csv.row({fmt(est.t_grid[j]), fmt(est.psi_hat[j]), fmt(est.psi_hat[j] / est.t_grid[j]),
                 std::to_string(est.pairs_found[j])});
    }
    out.trace_csv = std::move(csv).str();
    return out;
}

KindOutput run_sandwich(const Json& params, bool execute) {
    check_allowed_keys(params, {"kind", "seed", "tol", "max_iter", "rules", "schedule", "start"},
                       "scenario");
    const std::uint64_t seed = get_seed(params);
    const double tol = get_tol(params);
    const int max_iter = get_max_iter(params, 100);

    const Json& rules_json = require_key(params, "rules", "scenario");
    if (!rules_json.is_array() || rules_json.empty()) {
        throw ScenarioError("'rules' must be a nonempty array");
    }
    std::vector<std::shared_ptr<IntervalRule>> rules;
    for (std::size_t i = 0; i < rules_json.size(); ++i) {
        const std::string ctx = "rules[" + std::to_string(i) + "]";
        rules.push_back(require_interval_rule(parse_rule(rules_json[i], ctx), ctx));
    }
    const Json& sched_json = require_key(params, "schedule", "scenario");
    if (!sched_json.is_array() || sched_json.empty()) {
        throw ScenarioError("'schedule' must be a nonempty array");
    }
    std::vector<int> schedule;
    for (std::size_t i = 0; i < sched_json.size(); ++i) {
        schedule.push_back(static_cast<int>(
            get_integer(sched_json[i], "schedule[" + std::to_string(i) + "]")));
    }
    const IntervalCredal start = parse_interval(require_key(params, "start", "scenario"), "start");
    if (!execute) return {};

    const SandwichReport report = sandwich_run(rules, schedule, start, tol, max_iter, seed);

    KindOutput out;
    out.pass = report.inclusion_all && report.limits_ordered;
    out.result["inclusion_all"] = report.inclusion_all;
    out.result["limits_ordered"] = report.limits_ordered;
    out.result["iterations"] = report.iterations;
    out.result["lower_limit"] = {report.lower_limit.lo, report.lower_limit.hi};
    out.result["composed_limit"] = {report.composed_limit.lo, report.composed_limit.hi};
    out.result["upper_limit"] = {report.upper_limit.lo, report.upper_limit.hi};
    out.result["lower_converged"] = report.lower_converged;
    out.result["composed_converged"] = report.composed_converged;
    out.result["upper_converged"] = report.upper_converged;
    Csv csv("n,lower_lo,lower_hi,composed_lo,composed_hi,upper_lo,upper_hi,inclusion_ok");
    for (const SandwichStep& s : report.steps) {
        csv.row({std::to_string(s.n), fmt(s.lower.lo), fmt(s.lower.hi), fmt(s.composed.lo),
                 fmt(s.composed.hi), fmt(s.upper.lo), fmt(s.upper.hi),
                 s.inclusion_ok ? "1" : "0"});
    }
    out.trace_csv = std::move(csv).str();
    return out;
}

KindOutput run_gaussian(const Json& params, bool execute) {
    check_allowed_keys(params,
                       {"kind", "seed", "mu", "tau2", "theta_star", "n", "rounds",
                        "fresh_batch_per_round", "target_diff"},
                       "scenario");
    const std::uint64_t seed = get_seed(params);
    const std::vector<double> mu = get_vector(require_key(params, "mu", "scenario"), "mu");
    const std::vector<double> tau2 = get_vector(require_key(params, "tau2", "scenario"), "tau2");
    if (mu.size() != tau2.size()) {
        throw ScenarioError("'mu' and 'tau2' must have the same length");
    }
    const double theta_star =
        params.contains("theta_star") ? get_number(params.at("theta_star"), "theta_star") : 0.0;
    const int n = params.contains("n")
                      ? static_cast<int>(get_integer(params.at("n"), "n"))
                      : 20;
    const int rounds = params.contains("rounds")
                           ? static_cast<int>(get_integer(params.at("rounds"), "rounds"))
                           : 50;
    const bool fresh = params.contains("fresh_batch_per_round")
                           ? get_bool(params.at("fresh_batch_per_round"), "fresh_batch_per_round")
                           : false;
    const double target_diff =
        params.contains("target_diff") ? get_number(params.at("target_diff"), "target_diff")
                                       : 1e-8;

    std::vector<GaussianParam> components;
    for (std::size_t j = 0; j < mu.size(); ++j) {
        try {
            components.emplace_back(mu[j], tau2[j]);
        } catch (...) {
            rethrow_with_key("tau2[" + std::to_string(j) + "]");
        }
    }
    if (n < 1) throw ScenarioError("'n' must be >= 1");
    if (rounds < 1) throw ScenarioError("'rounds' must be >= 1");
    if (!execute) return {};
    const DataBatch batch = DataBatch::generate(n, theta_star, seed);
    const IllustrationTrace trace = run_illustration(GaussianFGCS(components), batch, rounds, fresh);

    bool decreasing_from_round_2 = true;
    double min_diff = trace.rounds.front().avg_sq_diff;
    for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
        min_diff = std::min(min_diff, trace.rounds[t].avg_sq_diff);
        if (t >= 2 && !(trace.rounds[t].avg_sq_diff < trace.rounds[t - 1].avg_sq_diff)) {
            decreasing_from_round_2 = false;
        }
    }

    KindOutput out;
    out.pass = decreasing_from_round_2 && min_diff < target_diff;
    out.result["n"] = batch.n;
    out.result["sum_x"] = batch.sum_x;
    out.result["theta_star"] = theta_star;
    out.result["rounds"] = rounds;
    out.result["fresh_batch_per_round"] = fresh;
    out.result["decreasing_from_round_2"] = decreasing_from_round_2;
    out.result["min_avg_sq_diff"] = min_diff;
    out.result["target_diff"] = target_diff;
    Json final_params = Json::array();
    for (const GaussianParam& p : trace.rounds.back().params) {
        final_params.push_back({{"mu", p.mu}, {"tau2", p.tau2}});
    }
    out.result["final_params"] = std::move(final_params);

    std::string header = "round,avg_sq_diff";
    for (std::size_t j = 0; j < mu.size(); ++j) {
        header += ",mu_" + std::to_string(j + 1) + ",tau2_" + std::to_string(j + 1);
    }
    Csv csv(header);
    for (const IllustrationRound& r : trace.rounds) {
        std::vector<std::string> cells{std::to_string(r.round), fmt(r.avg_sq_diff)};
        for (const GaussianParam& p : r.params) {
            cells.push_back(fmt(p.mu));
            cells.push_back(fmt(p.tau2));
        }
        csv.row(cells);
    }
    out.trace_csv = std::move(csv).str();
    return out;
}

KindOutput run_uniqueness(const Json& params, bool execute) {
    check_allowed_keys(params,
                       {"kind", "seed", "tol", "max_iter", "metric", "rule", "starts",
                        "random_starts"},
                       "scenario");
    const std::uint64_t seed = get_seed(params);
    const double tol = get_tol(params);
    const int max_iter = get_max_iter(params);
    const AnyRule rule = parse_rule(require_key(params, "rule", "scenario"), "rule");

    UniquenessReport report;
    if (const auto* credal_rule = std::get_if<std::shared_ptr<CredalRule>>(&rule)) {
        MetricKind metric = MetricKind::TvHausdorff;
        if (params.contains("metric")) {
            metric = metric_from_name(get_string(params.at("metric"), "metric"));
        }
        std::vector<FGCS> starts;
        if (params.contains("starts")) {
            const Json& sj = params.at("starts");
            if (!sj.is_array()) throw ScenarioError("'starts' must be an array");
            for (std::size_t i = 0; i < sj.size(); ++i) {
                const std::string ctx = "starts[" + std::to_string(i) + "]";
                check_allowed_keys(sj[i], {"extremes"}, ctx);
                starts.push_back(parse_fgcs(require_key(sj[i], "extremes", ctx),
                                            ctx + ".extremes"));
            }
        } else {
            const Json& rj = require_key(params, "random_starts", "scenario");
            check_allowed_keys(rj, {"count", "dim", "max_extremes"}, "random_starts");
            const long count = get_integer(require_key(rj, "count", "random_starts"),
                                           "random_starts.count");
            const long dim = get_integer(require_key(rj, "dim", "random_starts"),
                                         "random_starts.dim");
            const long max_ext = get_integer(require_key(rj, "max_extremes", "random_starts"),
                                             "random_starts.max_extremes");
            if (count < 2) throw ScenarioError("'random_starts.count' must be >= 2");
            if (dim < 2) throw ScenarioError("'random_starts.dim' must be >= 2");
            if (max_ext < 1) throw ScenarioError("'random_starts.max_extremes' must be >= 1");
            Rng rng(seed);
            for (long i = 0; i < count; ++i) {
                starts.push_back(random_fgcs(rng, static_cast<std::size_t>(dim),
                                             static_cast<std::size_t>(max_ext)));
            }
        }
        if (starts.size() < 2) throw ScenarioError("'starts' must list at least 2 sets");
        if (!execute) return {};
        report = uniqueness_check(**credal_rule, starts, tol, max_iter, metric);
    } else {
        if (params.contains("metric") &&
            metric_from_name(get_string(params.at("metric"), "metric")) != MetricKind::Interval) {
            throw ScenarioError("interval rules use the 'interval' metric");
        }
        if (!params.contains("starts")) {
            throw ScenarioError("interval rules require explicit 'starts'");
        }
        const Json& sj = params.at("starts");
        if (!sj.is_array()) throw ScenarioError("'starts' must be an array");
        std::vector<IntervalCredal> starts;
        for (std::size_t i = 0; i < sj.size(); ++i) {
            const std::string ctx = "starts[" + std::to_string(i) + "]";
            check_allowed_keys(sj[i], {"interval"}, ctx);
            starts.push_back(parse_interval(require_key(sj[i], "interval", ctx),
                                            ctx + ".interval"));
        }
        if (starts.size() < 2) throw ScenarioError("'starts' must list at least 2 sets");
        if (!execute) return {};
        report = uniqueness_check(*std::get<std::shared_ptr<IntervalRule>>(rule), starts, tol,
                                  max_iter);
    }

    KindOutput out;
    out.pass = report.pass;
    out.result["num_starts"] = report.traces.size();
    out.result["all_converged"] = report.all_converged;
    out.result["pairwise"] = report.pairwise;
    out.result["max_pairwise"] = report.max_pairwise;
    out.result["pass"] = report.pass;
    Csv csv("start,converged,iterations,final_d_fix");
    for (std::size_t i = 0; i < report.traces.size(); ++i) {
        const OrbitTrace& t = report.traces[i];
        csv.row({std::to_string(i), t.converged ? "1" : "0", std::to_string(t.iterations),
                 fmt(t.steps.back().d_fix)});
    }
    out.trace_csv = std::move(csv).str();
    return out;
}

const std::set<std::string> kKinds = {"iterate",  "contract", "psi",       "counterexample",
                                      "sandwich", "gaussian", "uniqueness"};

KindOutput dispatch(const Scenario& s, bool execute) {
    if (s.kind == "iterate") return run_iterate(s.params, execute);
    if (s.kind == "contract") return run_contract(s.params, execute);
    if (s.kind == "psi") return run_psi(s.params, execute);
    if (s.kind == "counterexample") return run_counterexample(s.params, execute);
    if (s.kind == "sandwich") return run_sandwich(s.params, execute);
    if (s.kind == "gaussian") return run_gaussian(s.params, execute);
    if (s.kind == "uniqueness") return run_uniqueness(s.params, execute);
    throw ScenarioError("unknown scenario kind '" + s.kind + "'");
}

}  // namespace

Scenario parse_scenario(const Json& j) {
    if (!j.is_object()) throw ScenarioError("scenario must be a JSON object");
    const std::string kind = get_string(require_key(j, "kind", "scenario"), "kind");
    if (!kKinds.count(kind)) {
        throw ScenarioError("unknown scenario kind '" + kind + "'");
    }
    Scenario s{kind, j};
    dispatch(s, /*execute=*/false);  // full structural + domain validation
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file '" + path.string() + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ScenarioError(std::string("scenario parse error: ") + e.what());
    }
    return parse_scenario(j);
}

RunResult run_scenario(const Scenario& s) {
    KindOutput out = dispatch(s, /*execute=*/true);

    RunResult result;
    result.pass = out.pass;
    result.trace_csv = std::move(out.trace_csv);
    Json report;
    report["schema_version"] = 1;
    report["library_version"] = kVersion;
    report["kind"] = s.kind;
    report["scenario"] = s.params;
    report["scenario_hash"] = scenario_hash(s.params);
    report["seed"] = get_seed(s.params);
    report["pass"] = out.pass;
    report["result"] = std::move(out.result);
    result.report = std::move(report);
    return result;
}

void write_run_outputs(const RunResult& r, const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const fs::path trace_path = out_dir / "trace.csv";
    const fs::path report_path = out_dir / "report.json";
    const fs::path meta_path = out_dir / "metadata.json";

    auto cleanup = [&] {
        std::error_code ec;
        fs::remove(trace_path, ec);
        fs::remove(report_path, ec);
        fs::remove(meta_path, ec);
    };
    try {
        {
            std::ofstream f(trace_path, std::ios::binary);
            if (!f) throw Error("cannot write " + trace_path.string());
            f << r.trace_csv;
        }
        {
            std::ofstream f(report_path, std::ios::binary);
            if (!f) throw Error("cannot write " + report_path.string());
            f << r.report.dump(2) << "\n";
        }
        {
            // Timestamps are kept out of report.json so reruns stay
            // byte-identical; they live here instead.
            Json meta;
            meta["generated_at_unix"] = static_cast<long long>(std::time(nullptr));
            meta["scenario_hash"] = r.report.at("scenario_hash");
            std::ofstream f(meta_path, std::ios::binary);
            if (!f) throw Error("cannot write " + meta_path.string());
            f << meta.dump(2) << "\n";
        }
    } catch (...) {
        cleanup();
        throw;
    }
}

std::string scenario_hash(const Json& params) {
    const std::string dump = params.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

}  // namespace credal
