#include <doctest.h>

#include "evoq/dominance.hpp"
#include "evoq/refpoints.hpp"
#include "evoq/rng.hpp"
#include "evoq/variation.hpp"

#include "oracles.hpp"

#include <set>

using namespace evoq;

TEST_CASE("dominates basics") {
    CHECK(dominates({1, 2}, {2, 3}));
    CHECK_FALSE(dominates({1, 2}, {2, 1}));
    CHECK_FALSE(dominates({1, 2}, {1, 2}));
    CHECK_FALSE(dominates({2, 3}, {1, 2}));
    CHECK(dominates({1, 2}, {1, 3}));
    CHECK_THROWS_AS((void)dominates({1, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("non_dominated_sort small cases") {
    std::vector<ObjectiveVector> objs = {{1, 2}, {2, 1}, {3, 3}};
    auto fp = non_dominated_sort(objs);
    REQUIRE(fp.fronts.size() == 2);
    CHECK(fp.fronts[0] == std::vector<std::size_t>{0, 1});
    CHECK(fp.fronts[1] == std::vector<std::size_t>{2});

    auto single = non_dominated_sort(std::vector<ObjectiveVector>{{1, 1, 1}});
    REQUIRE(single.fronts.size() == 1);
    CHECK(single.fronts[0] == std::vector<std::size_t>{0});
}

TEST_CASE("non_dominated_sort rejects unevaluated members") {
    Population pop;
    pop.members.resize(2);
    pop.members[0].objectives = ObjectiveVector{1, 2};
    CHECK_THROWS_AS(non_dominated_sort(pop), std::logic_error);
}

TEST_CASE("non_dominated_sort matches brute-force oracle") {
    Rng rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 5 + rng.uniform_index(30);
        const std::size_t m = 2 + rng.uniform_index(3);
        auto objs = oracle::random_instance(n, m, rng);
        auto fp = non_dominated_sort(objs);
        auto ranks = oracle::front_ranks_bruteforce(objs);

        std::size_t covered = 0;
        for (std::size_t level = 0; level < fp.fronts.size(); ++level) {
            for (std::size_t idx : fp.fronts[level]) {
                CHECK(ranks[idx] == static_cast<int>(level));
                ++covered;
            }
        }
        CHECK(covered == n); // disjoint union over the population
    }
}

TEST_CASE("front partition invariants hold on random instances") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        auto objs = oracle::random_instance(40, 3, rng);
        auto fp = non_dominated_sort(objs);

        // front 0 mutually non-dominated
        for (std::size_t a : fp.fronts[0])
            for (std::size_t b : fp.fronts[0]) CHECK_FALSE(dominates(objs[a], objs[b]));

        // every member of front k dominated by someone in front k-1
        for (std::size_t k = 1; k < fp.fronts.size(); ++k) {
            for (std::size_t idx : fp.fronts[k]) {
                bool found = false;
                for (std::size_t prev : fp.fronts[k - 1])
                    if (dominates(objs[prev], objs[idx])) found = true;
                CHECK(found);
            }
        }
    }
}

TEST_CASE("das_dennis_points basics") {
    auto two = das_dennis_points(2, 1);
    REQUIRE(two.size() == 2);
    std::set<std::vector<double>> pts(two.points.begin(), two.points.end());
    CHECK(pts.count({0.0, 1.0}) == 1);
    CHECK(pts.count({1.0, 0.0}) == 1);

    auto axes = das_dennis_points(3, 1);
    REQUIRE(axes.size() == 3);

    CHECK_THROWS_AS(das_dennis_points(1, 3), std::invalid_argument);
    CHECK_THROWS_AS(das_dennis_points(3, 0), std::invalid_argument);
}

TEST_CASE("das_dennis_points m=3 p=12 gives C(14,2)=91 simplex points") {
    auto set = das_dennis_points(3, 12);
    CHECK(set.size() == 91);

    // enumeration oracle: count lattice points directly
    std::size_t count = 0;
    for (int a = 0; a <= 12; ++a)
        for (int b = 0; a + b <= 12; ++b) ++count;
    CHECK(set.size() == count);

    for (const auto& p : set.points) {
        double sum = 0.0;
        for (double v : p) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }

    // all points distinct
    std::set<std::vector<double>> uniq(set.points.begin(), set.points.end());
    CHECK(uniq.size() == set.size());
}

TEST_CASE("das_dennis_divisions_for picks the smallest adequate p") {
    CHECK(das_dennis_divisions_for(3, 20) == 5);  // C(7,2)=21
    CHECK(das_dennis_divisions_for(3, 91) == 12); // C(14,2)=91
    CHECK(das_dennis_divisions_for(3, 92) == 13);
}

namespace {

DecisionVector vec(std::vector<double> v, BoundsPtr b) {
    return DecisionVector{std::move(v), std::move(b)};
}

} // namespace

TEST_CASE("sbx gene kernel matches the scalar oracle") {
    // u = 0.5 -> beta = 1 -> children equal parents
    auto [a, b] = sbx_gene(0.3, 0.7, 30.0, 0.5);
    CHECK(a == doctest::Approx(0.3));
    CHECK(b == doctest::Approx(0.7));

    // frozen example: p1=0.2, p2=0.8, eta=30, u=0.9
    const double beta = oracle::sbx_beta(0.9, 30.0);
    auto [c1, c2] = sbx_gene(0.2, 0.8, 30.0, 0.9);
    CHECK(c1 == doctest::Approx(0.5 * ((1 + beta) * 0.2 + (1 - beta) * 0.8)).epsilon(1e-12));
    CHECK(c2 == doctest::Approx(0.5 * ((1 - beta) * 0.2 + (1 + beta) * 0.8)).epsilon(1e-12));
}

TEST_CASE("sbx midpoint identity holds for any eta and u") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const double p1 = rng.uniform(-3.0, 3.0);
        const double p2 = rng.uniform(-3.0, 3.0);
        const double eta = rng.uniform(0.1, 50.0);
        const double u = rng.uniform();
        auto [c1, c2] = sbx_gene(p1, p2, eta, u);
        CHECK(0.5 * (c1 + c2) == doctest::Approx(0.5 * (p1 + p2)).epsilon(1e-9));
    }
}

TEST_CASE("sbx crossover on vectors stays in bounds and validates input") {
    Rng rng(5);
    auto bounds = make_unit_bounds(6);
    auto p1 = vec({0.1, 0.9, 0.5, 0.0, 1.0, 0.3}, bounds);
    auto p2 = vec({0.8, 0.2, 0.5, 1.0, 0.0, 0.6}, bounds);
    for (int trial = 0; trial < 100; ++trial) {
        auto [c1, c2] = sbx_crossover(p1, p2, 2.0, rng);
        CHECK(c1.within_bounds());
        CHECK(c2.within_bounds());
    }
    CHECK_THROWS_AS(sbx_crossover(p1, p2, 0.0, rng), std::invalid_argument);
}

TEST_CASE("polynomial mutation kernel and vector operation") {
    CHECK(plm_delta(0.5, 20.0) == doctest::Approx(0.0));

    // frozen example: x=0.5 on [0,1], eta=20, u=0.8
    const double delta = 1.0 - std::pow(0.4, 1.0 / 21.0);
    CHECK(plm_delta(0.8, 20.0) == doctest::Approx(delta).epsilon(1e-12));
    CHECK(plm_delta(0.8, 20.0) == doctest::Approx(oracle::plm_delta(0.8, 20.0)));

    Rng rng(17);
    auto bounds = make_unit_bounds(8);
    auto x = vec({0.5, 0.1, 0.9, 0.0, 1.0, 0.4, 0.6, 0.2}, bounds);

    auto untouched = polynomial_mutation(x, 20.0, 0.0, rng);
    CHECK(untouched.values == x.values);

    for (int trial = 0; trial < 100; ++trial) {
        auto mutated = polynomial_mutation(x, 20.0, 1.0, rng);
        CHECK(mutated.within_bounds());
    }
    CHECK_THROWS_AS(polynomial_mutation(x, -1.0, 0.5, rng), std::invalid_argument);
    CHECK_THROWS_AS(polynomial_mutation(x, 20.0, 1.5, rng), std::invalid_argument);
}

TEST_CASE("rng determinism and uniform_index bounds") {
    Rng a(123), b(123);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng r(9);
    for (int i = 0; i < 1000; ++i) {
        auto idx = r.uniform_index(7);
        CHECK(idx < 7);
        const double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    CHECK(mix_seed(1, 2) != mix_seed(1, 3));
    CHECK(mix_seed(1, 2) == mix_seed(1, 2));
}
