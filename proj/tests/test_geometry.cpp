#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "credal/geometry.hpp"
#include "oracle.hpp"

using namespace credal;

namespace {

FGCS make_set(std::vector<std::vector<double>> pts) {
    std::vector<Dist> ds;
    for (auto& p : pts) ds.emplace_back(std::move(p));
    return FGCS(std::move(ds));
}

}  // namespace

TEST_CASE("reduce drops convex-combination points") {
    FGCS r = reduce({Dist({1.0, 0.0}), Dist({0.0, 1.0}), Dist({0.5, 0.5})});
    CHECK(r.size() == 2);
    CHECK(r.reduced());

    FGCS single = reduce({Dist({0.3, 0.7})});
    CHECK(single.size() == 1);

    FGCS simplex3 = reduce({Dist({1.0, 0.0, 0.0}), Dist({0.0, 1.0, 0.0}), Dist({0.0, 0.0, 1.0}),
                            Dist({1.0 / 3, 1.0 / 3, 1.0 / 3})});
    CHECK(simplex3.size() == 3);

    CHECK_THROWS_AS(reduce({}), EmptyCredalError);
}

TEST_CASE("reduce is idempotent and hull-preserving on random sets") {
    Rng rng(23);
    for (int t = 0; t < 60; ++t) {
        const std::size_t dim = 2 + t % 3;
        std::vector<Dist> pts;
        const std::size_t n = 1 + rng.next_u64() % 6;
        for (std::size_t i = 0; i < n; ++i) pts.emplace_back(rng.dirichlet(dim));
        FGCS r1 = reduce(pts);
        FGCS r2 = reduce(r1.extremes());
        CHECK(r1.size() == r2.size());
        for (std::size_t i = 0; i < r1.size(); ++i) {
            CHECK(tv_distance(r1.extremes()[i], r2.extremes()[i]) <= 1e-12);
        }
        for (const Dist& p : pts) CHECK(contains(r1, p));
    }
}

TEST_CASE("contains examples") {
    FGCS binary = make_set({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(contains(binary, Dist({0.4, 0.6})));

    FGCS slab = make_set({{0.6, 0.4}, {0.8, 0.2}});
    CHECK_FALSE(contains(slab, Dist({0.5, 0.5})));

    FGCS point = make_set({{0.3, 0.7}});
    CHECK(contains(point, Dist({0.3, 0.7})));
    CHECK_THROWS_AS(contains(point, Dist({0.3, 0.3, 0.4})), DimensionError);
}

TEST_CASE("includes examples") {
    FGCS binary = make_set({{1.0, 0.0}, {0.0, 1.0}});
    FGCS slab = make_set({{0.6, 0.4}, {0.8, 0.2}});
    FGCS point = make_set({{0.65, 0.35}});
    CHECK(includes(binary, slab));
    CHECK(includes(slab, point));
    CHECK_FALSE(includes(point, slab));
}

TEST_CASE("support_function examples") {
    FGCS point = make_set({{0.25, 0.75}});
    CHECK(support_function(point, {0.0, 1.0}) == doctest::Approx(0.75));

    FGCS binary = make_set({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(support_function(binary, {2.0, 5.0}) == doctest::Approx(5.0));
    CHECK(support_function(binary, {1.0, 1.0}) == doctest::Approx(1.0));
}

TEST_CASE("point_to_set_tv examples") {
    FGCS slab = make_set({{0.6, 0.4}, {0.8, 0.2}});
    CHECK(point_to_set_tv(Dist({0.7, 0.3}), slab) <= 1e-12);
    CHECK(point_to_set_tv(Dist({0.5, 0.5}), slab) == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(point_to_set_tv(Dist({1.0, 0.0}), make_set({{0.0, 1.0}})) == doctest::Approx(1.0));
}

TEST_CASE("hausdorff_tv examples") {
    FGCS slab = make_set({{0.6, 0.4}, {0.8, 0.2}});
    CHECK(hausdorff_tv(slab, slab) == 0.0);
    CHECK(hausdorff_tv(slab, make_set({{0.7, 0.3}})) == doctest::Approx(0.1).epsilon(1e-9));
    FGCS binary = make_set({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(hausdorff_tv(binary, make_set({{0.5, 0.5}})) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("hausdorff_tv is zero exactly on mutually including pairs") {
    Rng rng(31);
    for (int t = 0; t < 40; ++t) {
        const std::size_t dim = 2 + t % 3;
        FGCS a = random_fgcs(rng, dim, 4);
        FGCS b = random_fgcs(rng, dim, 4);
        const bool mutual = includes(a, b) && includes(b, a);
        const double h = hausdorff_tv(a, b);
        if (mutual) {
            CHECK(h <= 2 * kMembershipTol);
        } else {
            CHECK(h > kMembershipTol);
        }

        // Same hull, different generating list: an interior mixture is added.
        if (a.size() >= 2) {
            std::vector<Dist> padded = a.extremes();
            std::vector<double> mix(dim, 0.0);
            for (std::size_t i = 0; i < dim; ++i) {
                mix[i] = 0.5 * (padded[0][i] + padded[1][i]);
            }
            padded.emplace_back(std::move(mix));
            FGCS same(padded);
            CHECK(hausdorff_tv(a, same) <= 2 * kMembershipTol);
            CHECK(includes(a, same));
            CHECK(includes(same, a));
        }
    }
}

TEST_CASE("hausdorff_tv agrees with the independent geometric oracle") {
    Rng rng(37);
    for (int t = 0; t < 30; ++t) {
        FGCS a = random_fgcs(rng, 3, 4);
        FGCS b = random_fgcs(rng, 3, 4);
        CHECK(std::abs(hausdorff_tv(a, b) - oracle::hausdorff_tv_dim3(a, b)) <= 1e-3);
    }
    for (int t = 0; t < 30; ++t) {
        FGCS a = random_fgcs(rng, 2, 3);
        FGCS b = random_fgcs(rng, 2, 3);
        CHECK(std::abs(hausdorff_tv(a, b) - oracle::hausdorff_tv_dim2(a, b)) <= 1e-3);
    }
}

TEST_CASE("support functions separate distinct reduced sets") {
    Rng rng(41);
    int checked = 0;
    for (int t = 0; t < 200 && checked < 40; ++t) {
        const std::size_t dim = 2 + t % 3;
        FGCS a = random_fgcs(rng, dim, 4);
        FGCS b = random_fgcs(rng, dim, 4);
        if (includes(a, b) && includes(b, a)) continue;  // equal hulls: nothing to separate
        ++checked;

        double best = 0.0;
        auto probe = [&](const std::vector<double>& dir) {
            best = std::max(best, std::abs(support_function(a, dir) - support_function(b, dir)));
        };
        for (const Dist& u : a.extremes()) {
            for (const Dist& v : b.extremes()) {
                std::vector<double> dir(dim);
                for (std::size_t i = 0; i < dim; ++i) dir[i] = u[i] - v[i];
                probe(dir);
            }
        }
        for (int k = 0; k < 1000; ++k) {
            std::vector<double> dir(dim);
            double norm = 0.0;
            for (double& c : dir) {
                c = rng.uniform(-1.0, 1.0);
                norm += c * c;
            }
            if (norm == 0.0) continue;
            for (double& c : dir) c /= std::sqrt(norm);
            probe(dir);
        }
        CHECK(best > 1e-9);
    }
    CHECK(checked >= 30);
}

TEST_CASE("hausdorff_finite_hilbert examples") {
    std::vector<PositiveDist> s{PositiveDist({0.5, 0.5}), PositiveDist({0.25, 0.75})};
    std::vector<PositiveDist> t{PositiveDist({0.5, 0.5})};
    CHECK(hausdorff_finite_hilbert(s, s) == 0.0);
    CHECK(hausdorff_finite_hilbert({s[0]}, {s[1]}) ==
          doctest::Approx(hilbert_distance(s[0], s[1])));
    CHECK(hausdorff_finite_hilbert(s, t) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(hausdorff_finite_hilbert({}, t), EmptyCredalError);
}

TEST_CASE("hausdorff_interval examples and embedding consistency") {
    CHECK(hausdorff_interval({0.2, 0.3}, {0.2, 0.3}) == 0.0);
    CHECK(hausdorff_interval({0.2, 0.3}, {0.3, 0.4}) == doctest::Approx(0.1));
    CHECK(hausdorff_interval({0.0, 1.0}, {0.5, 0.5}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(IntervalCredal(0.4, 0.2), ValidationError);

    Rng rng(43);
    for (int t = 0; t < 50; ++t) {
        const double alo = rng.uniform();
        const IntervalCredal a(alo, rng.uniform(alo, 1.0));
        const double blo = rng.uniform();
        const IntervalCredal b(blo, rng.uniform(blo, 1.0));
        CHECK(std::abs(hausdorff_interval(a, b) -
                       hausdorff_tv(interval_to_fgcs(a), interval_to_fgcs(b))) <= 1e-9);
    }
}

TEST_CASE("interval helpers") {
    CHECK(interval_includes({0.1, 0.9}, {0.2, 0.8}));
    CHECK_FALSE(interval_includes({0.3, 0.9}, {0.2, 0.8}));
    IntervalCredal h = interval_hull({0.1, 0.2}, {0.5, 0.6});
    CHECK(h.lo == 0.1);
    CHECK(h.hi == 0.6);
    IntervalCredal i = interval_intersection({0.1, 0.5}, {0.3, 0.9});
    CHECK(i.lo == 0.3);
    CHECK(i.hi == 0.5);
    CHECK_THROWS_AS(interval_intersection({0.1, 0.2}, {0.5, 0.6}), EmptyEnvelopeError);
}
