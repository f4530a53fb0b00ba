#pragma once

#include <vector>

#include "credal/dist.hpp"
#include "credal/rng.hpp"

namespace credal {

/// Finitely generated credal set: the convex hull of a stored list of extreme
/// distributions. When reduced() is true no stored point lies in the hull of
/// the others (up to the membership tolerance) and the list is sorted
/// lexicographically, so equal sets have equal representations.
class FGCS {
public:
    explicit FGCS(std::vector<Dist> extremes, bool reduced = false);

    const std::vector<Dist>& extremes() const { return extremes_; }
    std::size_t size() const { return extremes_.size(); }
    std::size_t dim() const { return extremes_.front().dim(); }
    bool reduced() const { return reduced_; }

private:
    std::vector<Dist> extremes_;
    bool reduced_;
};

/// Credal set over a binary outcome space, stored as the closed interval of
/// probabilities of the second outcome.
struct IntervalCredal {
    double lo = 0.0;
    double hi = 1.0;

    IntervalCredal(double lo, double hi);
};

/// Points within this total-variation distance of a hull count as members.
inline constexpr double kMembershipTol = 1e-9;

/// Minimal extreme representation of the convex hull of the given points.
FGCS reduce(const std::vector<Dist>& points);

/// LP membership test with the kMembershipTol slack.
bool contains(const FGCS& set, const Dist& p);

/// True iff every extreme of b is contained in a.
bool includes(const FGCS& a, const FGCS& b);

/// sup of the linear functional over the hull; attained at an extreme.
double support_function(const FGCS& set, const std::vector<double>& direction);

/// Exact minimum total-variation distance from p to the hull, as an LP over
/// convex-combination weights.
double point_to_set_tv(const Dist& p, const FGCS& set);

/// Hausdorff distance between hulls under total variation, computed
/// vertex-wise (the point-to-hull distance is convex in the point, so each
/// directed supremum is attained at an extreme).
double hausdorff_tv(const FGCS& a, const FGCS& b);

/// Two-sided Hausdorff distance between finite point sets under the Hilbert
/// projective metric. No hulls here: the Hilbert-metric machinery is only
/// used on finite images of finite sets.
double hausdorff_finite_hilbert(const std::vector<PositiveDist>& s,
                                const std::vector<PositiveDist>& t);

/// max(|lo difference|, |hi difference|).
double hausdorff_interval(const IntervalCredal& a, const IntervalCredal& b);

// Interval helpers used by the envelope rules and the sandwich runner.
bool interval_includes(const IntervalCredal& outer, const IntervalCredal& inner,
                       double eps = 0.0);
IntervalCredal interval_hull(const IntervalCredal& a, const IntervalCredal& b);
/// Throws EmptyEnvelopeError when the intervals are disjoint.
IntervalCredal interval_intersection(const IntervalCredal& a, const IntervalCredal& b);

/// Embeds [lo, hi] as an FGCS over the binary space via lambda -> (1-lambda, lambda).
FGCS interval_to_fgcs(const IntervalCredal& iv);

/// Random FGCS with 1..max_extremes Dirichlet-sampled interior extremes.
FGCS random_fgcs(Rng& rng, std::size_t dim, std::size_t max_extremes);

}  // namespace credal
