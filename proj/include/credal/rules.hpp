#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "credal/geometry.hpp"

namespace credal {

/// Update rule on finitely generated credal sets. apply() always returns a
/// nonempty reduced set of the same dimension.
class CredalRule {
public:
    virtual ~CredalRule() = default;
    virtual FGCS apply(const FGCS& set) const = 0;
    virtual std::string descriptor() const = 0;
};

/// Update rule on binary-space credal sets represented as intervals.
class IntervalRule {
public:
    virtual ~IntervalRule() = default;
    virtual IntervalCredal apply(const IntervalCredal& set) const = 0;
    virtual std::string descriptor() const = 0;
};

/// One evidence item: a label plus one likelihood vector per model index k.
struct EvidenceItem {
    std::string label;
    std::vector<Likelihood> likelihoods;
};

/// Nonempty collection of candidate evidence items sharing the same number of
/// models K and the same parameter dimension; all likelihoods are strictly
/// positive by construction of Likelihood.
class EvidenceClass {
public:
    explicit EvidenceClass(std::vector<EvidenceItem> items);

    const std::vector<EvidenceItem>& items() const { return items_; }
    std::size_t num_models() const { return items_.front().likelihoods.size(); }
    std::size_t dim() const { return items_.front().likelihoods.front().dim(); }

private:
    std::vector<EvidenceItem> items_;
};

/// Tilts every extreme of the prior by every likelihood and reduces the hull
/// of the images. Output extreme count is at most |extremes| * K.
FGCS cbdl_update(const FGCS& prior, const std::vector<Likelihood>& likelihoods);

struct PessimisticResult {
    /// Atom-wise infima over the evidence class (raw, possibly sub-additive).
    std::vector<double> atom_infima;
    bool common_minimizer = false;
    /// Label of the single evidence item attaining every atom infimum, and the
    /// resulting posterior; both set only when common_minimizer is true.
    std::string minimizer_label;
    std::optional<PositiveDist> posterior;
    /// First attaining evidence label per atom (tolerance 1e-12).
    std::vector<std::string> atom_argmin;
};

/// Worst-case Bayes update of one prior extreme under model k: the atom-wise
/// infimum of the posterior over the evidence class. The result is a
/// probability exactly when one evidence item minimizes every atom at once.
PessimisticResult pessimistic_tilt(const PositiveDist& prior_extreme, std::size_t k,
                                   const EvidenceClass& evidence);

struct PessimisticCredalUpdate {
    FGCS posterior;
    /// Minimizing evidence label per (extreme index, model k).
    std::vector<std::vector<std::string>> minimizers;
    /// True when, for each k, the same evidence item minimizes at every extreme.
    bool minimizer_uniform_across_extremes = true;
};

/// Credal-set version of pessimistic_tilt; throws AdditivityViolationError
/// (naming the extreme, k, and the disagreeing atoms) when any per-extreme
/// update lacks a common minimizer.
PessimisticCredalUpdate pessimistic_credal_update(const FGCS& prior,
                                                  const EvidenceClass& evidence);

/// Interval map that shifts right by delta until the upper endpoint reaches
/// 1 - delta, then shifts left (clipped to [0, 1]). Has no fixed point and is
/// discontinuous at hi = 1 - delta. Requires delta in (0, 1/2).
IntervalCredal delta_shift(const IntervalCredal& set, double delta);

/// Affine pull of both endpoints toward the anchor: monotone in set
/// inclusion, a Hausdorff (1 - gamma)-contraction, unique fixed point
/// {anchor}. Requires gamma in (0, 1) and anchor in [0, 1].
IntervalCredal anchor_contraction(const IntervalCredal& set, double gamma, double anchor);

// Rule objects wrapping the maps above.

class CbdlRule : public CredalRule {
public:
    explicit CbdlRule(std::vector<Likelihood> likelihoods);
    FGCS apply(const FGCS& set) const override;
    std::string descriptor() const override;
    const std::vector<Likelihood>& likelihoods() const { return likelihoods_; }

private:
    std::vector<Likelihood> likelihoods_;
};

class PessimisticRule : public CredalRule {
public:
    explicit PessimisticRule(EvidenceClass evidence);
    FGCS apply(const FGCS& set) const override;
    std::string descriptor() const override;

private:
    EvidenceClass evidence_;
};

class DeltaShiftRule : public IntervalRule {
public:
    explicit DeltaShiftRule(double delta);
    IntervalCredal apply(const IntervalCredal& set) const override;
    std::string descriptor() const override;
    double delta() const { return delta_; }

private:
    double delta_;
};

class AnchorContractionRule : public IntervalRule {
public:
    AnchorContractionRule(double gamma, double anchor);
    IntervalCredal apply(const IntervalCredal& set) const override;
    std::string descriptor() const override;
    double gamma() const { return gamma_; }
    double anchor() const { return anchor_; }

private:
    double gamma_;
    double anchor_;
};

/// lower(I) = intersection of the rule images (errors when empty);
/// upper(I) = smallest interval containing their union.
std::pair<std::shared_ptr<IntervalRule>, std::shared_ptr<IntervalRule>> envelope_maps(
    std::vector<std::shared_ptr<IntervalRule>> rules);

/// Runs an interval rule on binary-space credal sets: the dim-2 hull is read
/// off as the interval of second-coordinate values, mapped, and embedded
/// back. Lets the credal-set tooling drive interval rules.
class BinaryEmbeddedRule : public CredalRule {
public:
    explicit BinaryEmbeddedRule(std::shared_ptr<IntervalRule> inner);
    FGCS apply(const FGCS& set) const override;
    std::string descriptor() const override;

private:
    std::shared_ptr<IntervalRule> inner_;
};

// Perturbation helpers shared by the continuity probe and tests. Both keep
// the perturbed set within the given distance of the base.
FGCS perturb_fgcs(const FGCS& base, double tv_scale, Rng& rng);
IntervalCredal perturb_interval(const IntervalCredal& base, double scale, Rng& rng);

struct ContinuitySweepPoint {
    double scale = 0.0;
    double max_output_distance = 0.0;
    double ratio = 0.0;  // max_output_distance / scale
};

struct ContinuityReport {
    /// Halving scales, largest (the requested one) first.
    std::vector<ContinuitySweepPoint> sweep;
    double max_output_distance = 0.0;  // at the requested scale
    double modulus_ratio = 0.0;
    /// Set when the output distance fails to shrink with the input scale:
    /// at the smallest sweep scale s the observed jump still exceeds
    /// max(10 * s, 1e-9).
    bool discontinuity_flag = false;
};

ContinuityReport continuity_probe(const CredalRule& rule, const FGCS& base,
                                  double perturbation_scale, int trials,
                                  std::uint64_t seed = 0, int levels = 6);
ContinuityReport continuity_probe(const IntervalRule& rule, const IntervalCredal& base,
                                  double perturbation_scale, int trials,
                                  std::uint64_t seed = 0, int levels = 6);

}  // namespace credal
