#pragma once

// Independent oracles for the credal-geometry tests. These never touch the
// production LP path: hulls come from a monotone-chain scan in the plane and
// point-to-hull distances from closed-form segment minimization, with the
// hull of the left-hand set sampled densely (vertices included, where the
// convex distance function attains its maximum).

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "credal/geometry.hpp"

namespace oracle {

using credal::Dist;
using credal::FGCS;

// On three outcomes, total variation equals the largest event discrepancy:
// with u, v the first two coordinate differences, max(|u|, |v|, |u+v|).
inline double hex_norm(double u, double v) {
    return std::max({std::abs(u), std::abs(v), std::abs(u + v)});
}

struct P2 {
    double x = 0.0;
    double y = 0.0;
};

inline double cross(const P2& o, const P2& a, const P2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline std::vector<P2> hull2(std::vector<P2> pts) {
    std::sort(pts.begin(), pts.end(), [](const P2& a, const P2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const P2& a, const P2& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<P2> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;  // counterclockwise
}

// Exact min over t in [0,1] of hex_norm(p - (a + t(b-a))): the objective is a
// max of |linear| terms, so the minimum sits at an endpoint, a zero of one
// term, or a crossing of two terms; all candidates are enumerated.
inline double hex_point_segment(const P2& p, const P2& a, const P2& b) {
    const double u0 = p.x - a.x, du = b.x - a.x;
    const double v0 = p.y - a.y, dv = b.y - a.y;
    const double w0 = u0 + v0, dw = du + dv;
    const double c0[3] = {u0, v0, w0};
    const double c1[3] = {du, dv, dw};

    std::vector<double> ts{0.0, 1.0};
    for (int i = 0; i < 3; ++i) {
        if (c1[i] != 0.0) ts.push_back(c0[i] / c1[i]);
        for (int j = i + 1; j < 3; ++j) {
            const double diff = c1[i] - c1[j];
            if (diff != 0.0) ts.push_back((c0[i] - c0[j]) / diff);
            const double sum = c1[i] + c1[j];
            if (sum != 0.0) ts.push_back((c0[i] + c0[j]) / sum);
        }
    }
    double best = std::numeric_limits<double>::infinity();
    for (double t : ts) {
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, hex_norm(u0 - t * du, v0 - t * dv));
    }
    return best;
}

inline double hex_point_poly(const P2& p, const std::vector<P2>& poly) {
    if (poly.size() == 1) return hex_norm(p.x - poly[0].x, p.y - poly[0].y);
    if (poly.size() == 2) return hex_point_segment(p, poly[0], poly[1]);
    bool inside = true;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const P2& a = poly[i];
        const P2& b = poly[(i + 1) % poly.size()];
        if (cross(a, b, p) < -1e-12) {
            inside = false;
            break;
        }
    }
    if (inside) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        best = std::min(best, hex_point_segment(p, poly[i], poly[(i + 1) % poly.size()]));
    }
    return best;
}

// All barycentric weight vectors with `steps` increments over m extremes.
inline void compositions(std::size_t m, int steps, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
    if (cur.size() + 1 == m) {
        int used = 0;
        for (int c : cur) used += c;
        cur.push_back(steps - used);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    int used = 0;
    for (int c : cur) used += c;
    for (int i = 0; i <= steps - used; ++i) {
        cur.push_back(i);
        compositions(m, steps, cur, out);
        cur.pop_back();
    }
}

inline std::vector<P2> sample_hull_dim3(const FGCS& set, int steps) {
    std::vector<std::vector<int>> combos;
    std::vector<int> cur;
    compositions(set.size(), steps, cur, combos);
    std::vector<P2> pts;
    pts.reserve(combos.size());
    for (const auto& combo : combos) {
        double x = 0.0, y = 0.0;
        for (std::size_t j = 0; j < set.size(); ++j) {
            const double w = static_cast<double>(combo[j]) / steps;
            x += w * set.extremes()[j][0];
            y += w * set.extremes()[j][1];
        }
        pts.push_back({x, y});
    }
    return pts;
}

inline double hausdorff_tv_dim3(const FGCS& a, const FGCS& b, int steps = 20) {
    auto project = [](const FGCS& s) {
        std::vector<P2> pts;
        for (const Dist& e : s.extremes()) pts.push_back({e[0], e[1]});
        return pts;
    };
    const std::vector<P2> ha = hull2(project(a));
    const std::vector<P2> hb = hull2(project(b));
    auto directed = [&](const FGCS& from, const std::vector<P2>& to_poly) {
        double worst = 0.0;
        for (const P2& p : sample_hull_dim3(from, steps)) {
            worst = std::max(worst, hex_point_poly(p, to_poly));
        }
        return worst;
    };
    return std::max(directed(a, hb), directed(b, ha));
}

// On two outcomes, the hull is an interval in the first coordinate.
inline double hausdorff_tv_dim2(const FGCS& a, const FGCS& b, int steps = 2000) {
    auto span = [](const FGCS& s) {
        double lo = 1.0, hi = 0.0;
        for (const Dist& e : s.extremes()) {
            lo = std::min(lo, e[0]);
            hi = std::max(hi, e[0]);
        }
        return std::pair<double, double>{lo, hi};
    };
    const auto [alo, ahi] = span(a);
    const auto [blo, bhi] = span(b);
    auto directed = [&](double lo, double hi, double tlo, double thi) {
        double worst = 0.0;
        for (int i = 0; i <= steps; ++i) {
            const double x = lo + (hi - lo) * i / steps;
            worst = std::max(worst, std::max({0.0, tlo - x, x - thi}));
        }
        return worst;
    };
    return std::max(directed(alo, ahi, blo, bhi), directed(blo, bhi, alo, ahi));
}

}  // namespace oracle
