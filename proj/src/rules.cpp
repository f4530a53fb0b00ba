#include "credal/rules.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace credal {

namespace {

constexpr double kMinimizerTol = 1e-12;

PositiveDist promote_positive(const Dist& d) {
    return PositiveDist::with_tight_floor(d.weights());
}

std::vector<double> posterior_values(const PositiveDist& prior, const Likelihood& ell) {
    return bayes_tilt(prior, ell).weights();
}

}  // namespace

EvidenceClass::EvidenceClass(std::vector<EvidenceItem> items) : items_(std::move(items)) {
    if (items_.empty()) throw EmptyEvidenceError("EvidenceClass requires at least one item");
    const std::size_t k = items_.front().likelihoods.size();
    if (k == 0) throw EmptyEvidenceError("evidence item '" + items_.front().label +
                                         "' carries no likelihoods");
    const std::size_t d = items_.front().likelihoods.front().dim();
    for (const EvidenceItem& item : items_) {
        if (item.likelihoods.size() != k) {
            throw ValidationError("evidence item '" + item.label + "' has " +
                                  std::to_string(item.likelihoods.size()) +
                                  " likelihoods, expected " + std::to_string(k));
        }
        for (const Likelihood& ell : item.likelihoods) {
            if (ell.dim() != d) {
                throw DimensionError("evidence item '" + item.label +
                                     "': likelihood dimension mismatch");
            }
        }
    }
}

FGCS cbdl_update(const FGCS& prior, const std::vector<Likelihood>& likelihoods) {
    if (likelihoods.empty()) throw ParameterError("cbdl_update requires at least one likelihood");
    for (const Likelihood& ell : likelihoods) {
        if (ell.dim() != prior.dim()) {
            throw DimensionError("cbdl_update: likelihood dimension " + std::to_string(ell.dim()) +
                                 " vs prior dimension " + std::to_string(prior.dim()));
        }
    }
    std::vector<Dist> images;
    images.reserve(prior.size() * likelihoods.size());
    for (const Dist& e : prior.extremes()) {
        const PositiveDist p = promote_positive(e);
        for (const Likelihood& ell : likelihoods) {
            images.emplace_back(bayes_tilt(p, ell).weights());
        }
    }
    return reduce(images);
}

PessimisticResult pessimistic_tilt(const PositiveDist& prior_extreme, std::size_t k,
                                   const EvidenceClass& evidence) {
    if (k >= evidence.num_models()) {
        throw ParameterError("pessimistic_tilt: model index " + std::to_string(k) +
                             " out of range (K = " + std::to_string(evidence.num_models()) + ")");
    }
    const std::size_t d = prior_extreme.dim();
    if (evidence.dim() != d) {
        throw DimensionError("pessimistic_tilt: evidence dimension mismatch");
    }

    std::vector<std::vector<double>> posteriors;
    posteriors.reserve(evidence.items().size());
    for (const EvidenceItem& item : evidence.items()) {
        posteriors.push_back(posterior_values(prior_extreme, item.likelihoods[k]));
    }

    PessimisticResult result;
    result.atom_infima.assign(d, 0.0);
    result.atom_argmin.assign(d, "");
    for (std::size_t i = 0; i < d; ++i) {
        double inf = posteriors[0][i];
        for (const auto& post : posteriors) inf = std::min(inf, post[i]);
        result.atom_infima[i] = inf;
        for (std::size_t e = 0; e < posteriors.size(); ++e) {
            if (posteriors[e][i] <= inf + kMinimizerTol) {
                result.atom_argmin[i] = evidence.items()[e].label;
                break;
            }
        }
    }

    for (std::size_t e = 0; e < posteriors.size(); ++e) {
        bool attains_all = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (posteriors[e][i] > result.atom_infima[i] + kMinimizerTol) {
                attains_all = false;
                break;
            }
        }
        if (attains_all) {
            result.common_minimizer = true;
            result.minimizer_label = evidence.items()[e].label;
            result.posterior = bayes_tilt(prior_extreme, evidence.items()[e].likelihoods[k]);
            break;
        }
    }
    return result;
}

PessimisticCredalUpdate pessimistic_credal_update(const FGCS& prior,
                                                  const EvidenceClass& evidence) {
    const std::size_t num_k = evidence.num_models();
    std::vector<Dist> images;
    std::vector<std::vector<std::string>> minimizers(prior.size(),
                                                     std::vector<std::string>(num_k));
    for (std::size_t e = 0; e < prior.size(); ++e) {
        const PositiveDist p = promote_positive(prior.extremes()[e]);
        for (std::size_t k = 0; k < num_k; ++k) {
            PessimisticResult r = pessimistic_tilt(p, k, evidence);
            if (!r.common_minimizer) {
                double sum = 0.0;
                for (double v : r.atom_infima) sum += v;
                std::ostringstream msg;
                msg << "pessimistic update is not additive at extreme " << e << ", model k=" << k
                    << ": atom minimizers differ (";
                for (std::size_t i = 0; i < r.atom_argmin.size(); ++i) {
                    if (i) msg << ", ";
                    msg << "atom " << i << " -> " << r.atom_argmin[i];
                }
                msg << "); raw infima sum to " << sum;
                throw AdditivityViolationError(msg.str(), static_cast<int>(e),
                                               static_cast<int>(k));
            }
            minimizers[e][k] = r.minimizer_label;
            images.emplace_back(r.posterior->weights());
        }
    }

    PessimisticCredalUpdate out{reduce(images), std::move(minimizers), true};
    for (std::size_t k = 0; k < num_k && out.minimizer_uniform_across_extremes; ++k) {
        for (std::size_t e = 1; e < prior.size(); ++e) {
            if (out.minimizers[e][k] != out.minimizers[0][k]) {
                out.minimizer_uniform_across_extremes = false;
                break;
            }
        }
    }
    return out;
}

IntervalCredal delta_shift(const IntervalCredal& set, double delta) {
    if (!(delta > 0.0 && delta < 0.5)) {
        throw ParameterError("delta_shift requires delta in (0, 0.5), got " +
                             std::to_string(delta));
    }
    if (set.hi < 1.0 - delta) {
        return IntervalCredal(set.lo + delta, set.hi + delta);
    }
    return IntervalCredal(std::max(0.0, set.lo - delta), set.hi - delta);
}

IntervalCredal anchor_contraction(const IntervalCredal& set, double gamma, double anchor) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw ParameterError("anchor_contraction requires gamma in (0, 1), got " +
                             std::to_string(gamma));
    }
    if (!(anchor >= 0.0 && anchor <= 1.0)) {
        throw ParameterError("anchor_contraction requires anchor in [0, 1], got " +
                             std::to_string(anchor));
    }
    return IntervalCredal((1.0 - gamma) * set.lo + gamma * anchor,
                          (1.0 - gamma) * set.hi + gamma * anchor);
}

CbdlRule::CbdlRule(std::vector<Likelihood> likelihoods) : likelihoods_(std::move(likelihoods)) {
    if (likelihoods_.empty()) throw ParameterError("CbdlRule requires at least one likelihood");
}

FGCS CbdlRule::apply(const FGCS& set) const { return cbdl_update(set, likelihoods_); }

std::string CbdlRule::descriptor() const {
    return "cbdl(K=" + std::to_string(likelihoods_.size()) +
           ",dim=" + std::to_string(likelihoods_.front().dim()) + ")";
}

PessimisticRule::PessimisticRule(EvidenceClass evidence) : evidence_(std::move(evidence)) {}

FGCS PessimisticRule::apply(const FGCS& set) const {
    return pessimistic_credal_update(set, evidence_).posterior;
}

std::string PessimisticRule::descriptor() const {
    return "pessimistic(items=" + std::to_string(evidence_.items().size()) +
           ",K=" + std::to_string(evidence_.num_models()) + ")";
}

DeltaShiftRule::DeltaShiftRule(double delta) : delta_(delta) {
    delta_shift(IntervalCredal(0.0, 0.0), delta);  // validate eagerly
}

IntervalCredal DeltaShiftRule::apply(const IntervalCredal& set) const {
    return delta_shift(set, delta_);
}

std::string DeltaShiftRule::descriptor() const {
    return "delta_shift(delta=" + std::to_string(delta_) + ")";
}

AnchorContractionRule::AnchorContractionRule(double gamma, double anchor)
    : gamma_(gamma), anchor_(anchor) {
    anchor_contraction(IntervalCredal(0.0, 1.0), gamma, anchor);  // validate eagerly
}

IntervalCredal AnchorContractionRule::apply(const IntervalCredal& set) const {
    return anchor_contraction(set, gamma_, anchor_);
}

std::string AnchorContractionRule::descriptor() const {
    return "anchor_contraction(gamma=" + std::to_string(gamma_) +
           ",anchor=" + std::to_string(anchor_) + ")";
}

namespace {

class LowerEnvelopeRule : public IntervalRule {
public:
    explicit LowerEnvelopeRule(std::vector<std::shared_ptr<IntervalRule>> rules)
        : rules_(std::move(rules)) {}

    IntervalCredal apply(const IntervalCredal& set) const override {
        IntervalCredal acc = rules_.front()->apply(set);
        for (std::size_t i = 1; i < rules_.size(); ++i) {
            acc = interval_intersection(acc, rules_[i]->apply(set));
        }
        return acc;
    }

    std::string descriptor() const override {
        return "lower_envelope(" + std::to_string(rules_.size()) + " rules)";
    }

private:
    std::vector<std::shared_ptr<IntervalRule>> rules_;
};

class UpperEnvelopeRule : public IntervalRule {
public:
    explicit UpperEnvelopeRule(std::vector<std::shared_ptr<IntervalRule>> rules)
        : rules_(std::move(rules)) {}

    IntervalCredal apply(const IntervalCredal& set) const override {
        IntervalCredal acc = rules_.front()->apply(set);
        for (std::size_t i = 1; i < rules_.size(); ++i) {
            acc = interval_hull(acc, rules_[i]->apply(set));
        }
        return acc;
    }

    std::string descriptor() const override {
        return "upper_envelope(" + std::to_string(rules_.size()) + " rules)";
    }

private:
    std::vector<std::shared_ptr<IntervalRule>> rules_;
};

}  // namespace

std::pair<std::shared_ptr<IntervalRule>, std::shared_ptr<IntervalRule>> envelope_maps(
    std::vector<std::shared_ptr<IntervalRule>> rules) {
    if (rules.empty()) throw ParameterError("envelope_maps requires at least one rule");
    return {std::make_shared<LowerEnvelopeRule>(rules),
            std::make_shared<UpperEnvelopeRule>(std::move(rules))};
}

BinaryEmbeddedRule::BinaryEmbeddedRule(std::shared_ptr<IntervalRule> inner)
    : inner_(std::move(inner)) {
    if (!inner_) throw ParameterError("BinaryEmbeddedRule requires a rule");
}

FGCS BinaryEmbeddedRule::apply(const FGCS& set) const {
    if (set.dim() != 2) {
        throw DimensionError("BinaryEmbeddedRule applies to dim-2 credal sets only");
    }
    double lo = 1.0, hi = 0.0;
    for (const Dist& e : set.extremes()) {
        lo = std::min(lo, e[1]);
        hi = std::max(hi, e[1]);
    }
    return interval_to_fgcs(inner_->apply(IntervalCredal(lo, hi)));
}

std::string BinaryEmbeddedRule::descriptor() const {
    return "binary_embedding(" + inner_->descriptor() + ")";
}

FGCS perturb_fgcs(const FGCS& base, double tv_scale, Rng& rng) {
    std::vector<Dist> moved;
    moved.reserve(base.size());
    for (const Dist& e : base.extremes()) {
        const std::vector<double> target = rng.dirichlet(base.dim());
        const Dist q(target);
        const double gap = tv_distance(e, q);
        // Move toward a random interior point, capped so the step stays
        // within tv_scale; strict positivity is preserved by convexity.
        double t = gap <= tv_scale ? 1.0 : tv_scale / gap;
        t *= rng.uniform();
        std::vector<double> w(base.dim());
        for (std::size_t i = 0; i < base.dim(); ++i) w[i] = (1.0 - t) * e[i] + t * q[i];
        moved.emplace_back(std::move(w));
    }
    return FGCS(std::move(moved), false);
}

IntervalCredal perturb_interval(const IntervalCredal& base, double scale, Rng& rng) {
    const double hi = rng.uniform(std::max(0.0, base.hi - scale), std::min(1.0, base.hi + scale));
    const double lo =
        rng.uniform(std::max(0.0, base.lo - scale), std::min(hi, base.lo + scale));
    return IntervalCredal(lo, hi);
}

namespace {

template <typename Rule, typename Set, typename Perturb, typename Metric>
ContinuityReport probe_impl(const Rule& rule, const Set& base, double scale, int trials,
                            std::uint64_t seed, int levels, Perturb perturb, Metric metric) {
    if (!(scale > 0.0)) throw ParameterError("continuity_probe requires perturbation_scale > 0");
    if (trials < 1) throw ParameterError("continuity_probe requires trials >= 1");
    if (levels < 1) throw ParameterError("continuity_probe requires levels >= 1");

    const Set image = rule.apply(base);
    ContinuityReport report;
    double s = scale;
    for (int level = 0; level < levels; ++level, s *= 0.5) {
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
            Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(level) * trials + t);
            const Set nearby = perturb(base, s, rng);
            worst = std::max(worst, metric(rule.apply(nearby), image));
        }
        report.sweep.push_back({s, worst, worst / s});
    }
    report.max_output_distance = report.sweep.front().max_output_distance;
    report.modulus_ratio = report.sweep.front().ratio;
    const ContinuitySweepPoint& last = report.sweep.back();
    report.discontinuity_flag =
        last.max_output_distance > std::max(10.0 * last.scale, 1e-9);
    return report;
}

}  // namespace

ContinuityReport continuity_probe(const CredalRule& rule, const FGCS& base,
                                  double perturbation_scale, int trials, std::uint64_t seed,
                                  int levels) {
    return probe_impl(
        rule, base, perturbation_scale, trials, seed, levels,
        [](const FGCS& b, double s, Rng& rng) { return perturb_fgcs(b, s, rng); },
        [](const FGCS& x, const FGCS& y) { return hausdorff_tv(x, y); });
}

ContinuityReport continuity_probe(const IntervalRule& rule, const IntervalCredal& base,
                                  double perturbation_scale, int trials, std::uint64_t seed,
                                  int levels) {
    return probe_impl(
        rule, base, perturbation_scale, trials, seed, levels,
        [](const IntervalCredal& b, double s, Rng& rng) { return perturb_interval(b, s, rng); },
        [](const IntervalCredal& x, const IntervalCredal& y) { return hausdorff_interval(x, y); });
}

}  // namespace credal
