#include "credal/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "credal/lp.hpp"

namespace credal {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
    }
}

bool lex_less(const Dist& a, const Dist& b) {
    return a.weights() < b.weights();
}

// Minimize 1/2 sum |p - sum_j w_j v_j| over convex weights w. Variables are
// (w_1..w_m, s+_1..s+_d, s-_1..s-_d); constraints are the d coordinate
// balances plus sum w = 1.
double min_tv_to_hull(const Dist& p, const std::vector<Dist>& verts) {
    const std::size_t m = verts.size();
    const std::size_t d = p.dim();
    const std::size_t nvars = m + 2 * d;

    std::vector<std::vector<double>> A(d + 1, std::vector<double>(nvars, 0.0));
    std::vector<double> b(d + 1, 0.0);
    std::vector<double> c(nvars, 0.0);

    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < m; ++j) A[i][j] = verts[j][i];
        A[i][m + i] = -1.0;      // s+
        A[i][m + d + i] = 1.0;   // s-
        b[i] = p[i];
        c[m + i] = 0.5;
        c[m + d + i] = 0.5;
    }
    for (std::size_t j = 0; j < m; ++j) A[d][j] = 1.0;
    b[d] = 1.0;

    const LpResult r = solve_lp(A, b, c);
    if (!r.feasible) {
        // Always feasible by construction; treat a solver miss as a hard bug.
        throw Error("point_to_set_tv: internal LP reported infeasible");
    }
    return std::max(0.0, r.objective);
}

}  // namespace

FGCS::FGCS(std::vector<Dist> extremes, bool reduced)
    : extremes_(std::move(extremes)), reduced_(reduced) {
    if (extremes_.empty()) throw EmptyCredalError("FGCS requires at least one extreme point");
    const std::size_t d = extremes_.front().dim();
    for (const Dist& e : extremes_) require_same_dim(e.dim(), d, "FGCS");
}

IntervalCredal::IntervalCredal(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(0.0 <= lo && lo <= hi && hi <= 1.0)) {
        throw ValidationError("IntervalCredal requires 0 <= lo <= hi <= 1, got [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

FGCS reduce(const std::vector<Dist>& points) {
    if (points.empty()) throw EmptyCredalError("reduce: empty point list");
    const std::size_t d = points.front().dim();
    for (const Dist& p : points) require_same_dim(p.dim(), d, "reduce");

    // Sequentially drop points lying in the hull of the remaining ones.
    // Removing a redundant point never changes the hull, so the scan order
    // only affects which of a set of near-duplicates survives.
    std::vector<Dist> kept(points.begin(), points.end());
    for (std::size_t i = 0; i < kept.size() && kept.size() > 1;) {
        std::vector<Dist> others;
        others.reserve(kept.size() - 1);
        for (std::size_t j = 0; j < kept.size(); ++j) {
            if (j != i) others.push_back(kept[j]);
        }
        if (min_tv_to_hull(kept[i], others) <= kMembershipTol) {
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    std::sort(kept.begin(), kept.end(), lex_less);
    return FGCS(std::move(kept), true);
}

bool contains(const FGCS& set, const Dist& p) {
    require_same_dim(set.dim(), p.dim(), "contains");
    return point_to_set_tv(p, set) <= kMembershipTol;
}

bool includes(const FGCS& a, const FGCS& b) {
    require_same_dim(a.dim(), b.dim(), "includes");
    for (const Dist& v : b.extremes()) {
        if (!contains(a, v)) return false;
    }
    return true;
}

double support_function(const FGCS& set, const std::vector<double>& direction) {
    require_same_dim(set.dim(), direction.size(), "support_function");
    double best = -std::numeric_limits<double>::infinity();
    for (const Dist& v : set.extremes()) best = std::max(best, support_value(v, direction));
    return best;
}

double point_to_set_tv(const Dist& p, const FGCS& set) {
    require_same_dim(set.dim(), p.dim(), "point_to_set_tv");
    return min_tv_to_hull(p, set.extremes());
}

double hausdorff_tv(const FGCS& a, const FGCS& b) {
    require_same_dim(a.dim(), b.dim(), "hausdorff_tv");
    double h = 0.0;
    for (const Dist& v : a.extremes()) h = std::max(h, point_to_set_tv(v, b));
    for (const Dist& v : b.extremes()) h = std::max(h, point_to_set_tv(v, a));
    return h;
}

double hausdorff_finite_hilbert(const std::vector<PositiveDist>& s,
                                const std::vector<PositiveDist>& t) {
    if (s.empty() || t.empty()) {
        throw EmptyCredalError("hausdorff_finite_hilbert: empty point set");
    }
    const std::size_t d = s.front().dim();
    for (const PositiveDist& p : s) require_same_dim(p.dim(), d, "hausdorff_finite_hilbert");
    for (const PositiveDist& q : t) require_same_dim(q.dim(), d, "hausdorff_finite_hilbert");

    auto directed = [](const std::vector<PositiveDist>& from, const std::vector<PositiveDist>& to) {
        double worst = 0.0;
        for (const PositiveDist& p : from) {
            double nearest = std::numeric_limits<double>::infinity();
            for (const PositiveDist& q : to) nearest = std::min(nearest, hilbert_distance(p, q));
            worst = std::max(worst, nearest);
        }
        return worst;
    };
    return std::max(directed(s, t), directed(t, s));
}

double hausdorff_interval(const IntervalCredal& a, const IntervalCredal& b) {
    return std::max(std::abs(a.lo - b.lo), std::abs(a.hi - b.hi));
}

bool interval_includes(const IntervalCredal& outer, const IntervalCredal& inner, double eps) {
    return outer.lo <= inner.lo + eps && inner.hi <= outer.hi + eps;
}

IntervalCredal interval_hull(const IntervalCredal& a, const IntervalCredal& b) {
    return IntervalCredal(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

IntervalCredal interval_intersection(const IntervalCredal& a, const IntervalCredal& b) {
    const double lo = std::max(a.lo, b.lo);
    const double hi = std::min(a.hi, b.hi);
    if (lo > hi) {
        throw EmptyEnvelopeError("interval intersection is empty: [" + std::to_string(a.lo) +
                                 ", " + std::to_string(a.hi) + "] vs [" + std::to_string(b.lo) +
                                 ", " + std::to_string(b.hi) + "]");
    }
    return IntervalCredal(lo, hi);
}

FGCS interval_to_fgcs(const IntervalCredal& iv) {
    std::vector<Dist> pts;
    pts.emplace_back(std::vector<double>{1.0 - iv.lo, iv.lo});
    if (iv.hi != iv.lo) pts.emplace_back(std::vector<double>{1.0 - iv.hi, iv.hi});
    return FGCS(std::move(pts), true);
}

FGCS random_fgcs(Rng& rng, std::size_t dim, std::size_t max_extremes) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.next_u64() % max_extremes);
    std::vector<Dist> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.emplace_back(rng.dirichlet(dim));
    return reduce(pts);
}

}  // namespace credal
