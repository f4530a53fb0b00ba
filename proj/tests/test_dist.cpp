#include <cmath>
#include <vector>

#include <doctest.h>

#include "credal/dist.hpp"
#include "credal/rng.hpp"

using namespace credal;

namespace {
const double kLog3 = std::log(3.0);
}

TEST_CASE("Dist construction validates and renormalizes") {
    Dist d({0.25, 0.75});
    CHECK(d.dim() == 2);
    CHECK(d[0] == doctest::Approx(0.25));

    // Small deviation from unit sum is renormalized away.
    Dist e({0.5 + 2e-7, 0.5});
    double sum = e[0] + e[1];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(Dist({0.7}), ValidationError);            // dim < 2
    CHECK_THROWS_AS(Dist({-0.1, 1.1}), ValidationError);      // negative weight
    CHECK_THROWS_AS(Dist({0.5, 0.6}), ValidationError);       // sum off by > 1e-6
}

TEST_CASE("PositiveDist floors") {
    PositiveDist p({0.5, 0.5});
    CHECK(p.floor() == PositiveDist::kDefaultFloor);

    CHECK_THROWS_AS(PositiveDist({1.0, 0.0}, 1e-9), PositivityError);
    CHECK_THROWS_AS(PositiveDist({0.5, 0.5}, 0.6), PositivityError);

    PositiveDist tight = PositiveDist::with_tight_floor({0.2, 0.8});
    CHECK(tight.floor() == doctest::Approx(0.2));
}

TEST_CASE("Likelihood recomputes tight bounds") {
    Likelihood ell({2.0, 1.0, 3.0});
    CHECK(ell.alpha() == 1.0);
    CHECK(ell.beta() == 3.0);
    CHECK_THROWS_AS(Likelihood({1.0, 0.0}), PositivityError);
    CHECK_THROWS_AS(Likelihood({1.0, -2.0}), PositivityError);
}

TEST_CASE("tv_distance examples") {
    CHECK(tv_distance(Dist({0.5, 0.5}), Dist({0.5, 0.5})) == 0.0);
    CHECK(tv_distance(Dist({1.0, 0.0}), Dist({0.0, 1.0})) == doctest::Approx(1.0));
    CHECK(tv_distance(Dist({0.5, 0.5}), Dist({0.25, 0.75})) == doctest::Approx(0.25));
    CHECK_THROWS_AS(tv_distance(Dist({0.5, 0.5}), Dist({0.3, 0.3, 0.4})), DimensionError);
}

TEST_CASE("hilbert_distance examples") {
    PositiveDist p({0.5, 0.5});
    PositiveDist q({0.25, 0.75});
    CHECK(hilbert_distance(p, p) == 0.0);
    CHECK(hilbert_distance(p, q) == doctest::Approx(kLog3).epsilon(1e-12));
    CHECK(hilbert_distance(PositiveDist({0.9, 0.1}), PositiveDist({0.1, 0.9})) ==
          doctest::Approx(std::log(81.0)).epsilon(1e-12));
    CHECK_THROWS_AS(hilbert_distance(p, PositiveDist({0.2, 0.3, 0.5})), DimensionError);
}

TEST_CASE("hilbert_distance is projective in the raw weights") {
    // Scaling raw weights before construction changes nothing: construction
    // renormalizes, and the metric itself only sees ratios.
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> a = rng.dirichlet(4);
        std::vector<double> b = rng.dirichlet(4);
        const double base =
            hilbert_distance(PositiveDist::with_tight_floor(a), PositiveDist::with_tight_floor(b));
        // renormalize-on-construct absorbs a mild common scale
        std::vector<double> a2 = a, b2 = b;
        for (double& v : a2) v *= 1.0 + 3e-7;
        for (double& v : b2) v *= 1.0 - 3e-7;
        const double scaled = hilbert_distance(PositiveDist::with_tight_floor(a2),
                                               PositiveDist::with_tight_floor(b2));
        CHECK(scaled == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("bayes_tilt examples") {
    PositiveDist half({0.5, 0.5});
    CHECK(bayes_tilt(half, Likelihood({1.0, 1.0})).weights() ==
          std::vector<double>{0.5, 0.5});

    PositiveDist t1 = bayes_tilt(half, Likelihood({1.0, 3.0}));
    CHECK(t1[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(t1[1] == doctest::Approx(0.75).epsilon(1e-15));

    PositiveDist t2 = bayes_tilt(PositiveDist({0.25, 0.75}), Likelihood({3.0, 1.0}));
    CHECK(t2[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t2[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("bayes_tilt output floor bound") {
    Rng rng(11);
    for (int t = 0; t < 500; ++t) {
        PositiveDist p = random_positive_dist(rng, 3);
        std::vector<double> lv{rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)};
        Likelihood ell(lv);
        PositiveDist out = bayes_tilt(p, ell);
        const double claimed = ell.alpha() * p.floor() / ell.beta();
        CHECK(out.floor() >= claimed * (1.0 - 1e-12));
        for (std::size_t i = 0; i < out.dim(); ++i) CHECK(out[i] >= out.floor());
    }
}

TEST_CASE("bayes_tilt with constant likelihood is the identity") {
    Rng rng(13);
    for (int t = 0; t < 200; ++t) {
        PositiveDist p = random_positive_dist(rng, 5);
        PositiveDist out = bayes_tilt(p, Likelihood({2.0, 2.0, 2.0, 2.0, 2.0}));
        for (std::size_t i = 0; i < p.dim(); ++i) {
            CHECK(out[i] == doctest::Approx(p[i]).epsilon(1e-14));
        }
    }
}

TEST_CASE("support_value examples") {
    CHECK(support_value(Dist({0.5, 0.5}), {1.0, 1.0}) == doctest::Approx(1.0));
    CHECK(support_value(Dist({0.25, 0.75}), {0.0, 1.0}) == doctest::Approx(0.75));
    CHECK(support_value(Dist({1.0, 0.0}), {-1.0, 1.0}) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(support_value(Dist({0.5, 0.5}), {1.0, 2.0, 3.0}), DimensionError);
}

TEST_CASE("metric axioms hold on random triples") {
    Rng rng(101);
    double worst_tv = 0.0, worst_hb = 0.0;
    for (int t = 0; t < 10000; ++t) {
        const std::size_t dim = 2 + t % 4;
        PositiveDist a = random_positive_dist(rng, dim);
        PositiveDist b = random_positive_dist(rng, dim);
        PositiveDist c = random_positive_dist(rng, dim);

        CHECK(tv_distance(a, b) == tv_distance(b, a));
        CHECK(hilbert_distance(a, b) == doctest::Approx(hilbert_distance(b, a)).epsilon(1e-15));

        worst_tv = std::max(worst_tv, tv_distance(a, c) - tv_distance(a, b) - tv_distance(b, c));
        worst_hb = std::max(worst_hb, hilbert_distance(a, c) - hilbert_distance(a, b) -
                                          hilbert_distance(b, c));
    }
    CHECK(worst_tv <= 1e-12);
    CHECK(worst_hb <= 1e-12);
}
