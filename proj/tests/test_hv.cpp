#include <doctest.h>

#include "evoq/hypervolume.hpp"
#include "evoq/rng.hpp"

#include "oracles.hpp"

#include <algorithm>

using namespace evoq;

TEST_CASE("hypervolume single boxes and inclusion-exclusion") {
    HvReferencePoint r{{1.0, 1.0}};
    CHECK(hypervolume({{0.5, 0.5}}, r) == doctest::Approx(0.25));
    // 0.16 + 0.16 - 0.04
    CHECK(hypervolume({{0.2, 0.8}, {0.8, 0.2}}, r) == doctest::Approx(0.28));

    HvReferencePoint r3{{1.0, 1.0, 1.0}};
    CHECK(hypervolume({{0.0, 0.0, 0.0}}, r3) == doctest::Approx(1.0));
}

TEST_CASE("hypervolume filters points beyond the reference") {
    HvReferencePoint r{{1.0, 1.0}};
    CHECK(hypervolume({{0.5, 1.5}}, r) == 0.0);
    CHECK(hypervolume({{0.5, 0.5}, {2.0, 0.1}}, r) == doctest::Approx(0.25));
    CHECK(hypervolume({}, r) == 0.0);
    CHECK_THROWS_AS(hypervolume({{0.5, 0.5, 0.5}}, r), std::invalid_argument);
}

TEST_CASE("hypervolume monotone under point insertion") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 2 + rng.uniform_index(3);
        HvReferencePoint r{std::vector<double>(m, 1.0)};
        auto pts = oracle::random_instance(12, m, rng);
        std::vector<ObjectiveVector> sofar;
        double prev = 0.0;
        for (const auto& p : pts) {
            sofar.push_back(p);
            const double hv = hypervolume(sofar, r);
            CHECK(hv >= prev - 1e-12);
            prev = hv;
        }
    }
}

TEST_CASE("hypervolume invariant to removing strictly dominated points") {
    Rng rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 2 + rng.uniform_index(3);
        HvReferencePoint r{std::vector<double>(m, 1.0)};
        auto pts = oracle::random_instance(10, m, rng);

        std::vector<ObjectiveVector> kept;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            bool strictly_dominated = false;
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (i == j) continue;
                bool strict = true;
                for (std::size_t k = 0; k < m; ++k)
                    if (pts[j][k] >= pts[i][k]) strict = false;
                if (strict) strictly_dominated = true;
            }
            if (!strictly_dominated) kept.push_back(pts[i]);
        }
        CHECK(hypervolume(pts, r) == doctest::Approx(hypervolume(kept, r)).epsilon(1e-12));
    }
}

TEST_CASE("hypervolume invariant under objective permutation") {
    Rng rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        auto pts = oracle::random_instance(10, 3, rng);
        HvReferencePoint r{{1.0, 1.0, 1.0}};
        const double base = hypervolume(pts, r);

        std::vector<std::size_t> perm = {2, 0, 1};
        std::vector<ObjectiveVector> permuted;
        for (const auto& p : pts) permuted.push_back({p[perm[0]], p[perm[1]], p[perm[2]]});
        CHECK(hypervolume(permuted, r) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("monte carlo estimator agrees with known area and exact algorithm") {
    Rng rng(34);
    HvReferencePoint r{{1.0, 1.0}};
    auto est = hypervolume_monte_carlo({{0.5, 0.5}}, r, 1000000, rng);
    CHECK(std::abs(est.estimate - 0.25) <= 3.0 * est.stderr_est);

    auto empty = hypervolume_monte_carlo({}, r, 1000, rng);
    CHECK(empty.estimate == 0.0);

    for (int trial = 0; trial < 5; ++trial) {
        auto pts = oracle::random_instance(10, 3, rng);
        HvReferencePoint r3{{1.0, 1.0, 1.0}};
        const double exact = hypervolume(pts, r3);
        auto mc = hypervolume_monte_carlo(pts, r3, 200000, rng);
        CHECK(std::abs(mc.estimate - exact) <= 3.0 * mc.stderr_est + 1e-9);
    }
}

TEST_CASE("normalized_hv maps the box to [0,1]") {
    ObjectiveVector ideal{0.0, 0.0};
    HvReferencePoint nadir{{2.0, 2.0}};

    // single point at the ideal dominates the whole box
    CHECK(normalized_hv({{0.0, 0.0}}, ideal, nadir) == doctest::Approx(1.0));
    // nothing inside the box
    CHECK(normalized_hv({{3.0, 3.0}}, ideal, nadir) == 0.0);
    // centred point covers a quarter
    CHECK(normalized_hv({{1.0, 1.0}}, ideal, nadir) == doctest::Approx(0.25));
    // coordinates better than the ideal clamp to 0
    CHECK(normalized_hv({{-1.0, 1.0}}, ideal, nadir) == doctest::Approx(0.5));

    Rng rng(35);
    for (int trial = 0; trial < 20; ++trial) {
        auto pts = oracle::random_instance(8, 3, rng);
        const double v = normalized_hv(pts, {0, 0, 0}, HvReferencePoint{{1, 1, 1}});
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("normalized_hv degenerate range maps coordinate to zero") {
    // second objective has no spread: its normalized coordinate becomes 0,
    // so the value reduces to the first-coordinate interval
    ObjectiveVector ideal{0.0, 5.0};
    HvReferencePoint nadir{{1.0, 5.0}};
    CHECK(normalized_hv({{0.25, 5.0}}, ideal, nadir) == doctest::Approx(0.75));
}

TEST_CASE("hv trace max") {
    HvTrace trace;
    trace.per_generation_hv = {0.1, 0.4, 0.3};
    CHECK(trace.max_hv() == doctest::Approx(0.4));
    CHECK(HvTrace{}.max_hv() == 0.0);
}
