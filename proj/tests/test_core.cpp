#include "cnea/core.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace cnea;

TEST_CASE("search space rejects degenerate and mismatched bounds") {
    CHECK_THROWS_AS(SearchSpace({0.0, 0.0}, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(SearchSpace({1.0}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(SearchSpace({0.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(SearchSpace({}, {}), std::invalid_argument);
}

TEST_CASE("diagonal of a box") {
    CHECK(SearchSpace::cube(2, 0.0, 1.0).diagonal() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(SearchSpace({0.0, 0.0}, {3.0, 4.0}).diagonal() == 5.0);
}

TEST_CASE("random_genome stays in bounds and is seed-determined") {
    const auto space = SearchSpace::cube(2, -1.0, 1.0);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RngStream rng(seed);
        const auto g = random_genome(space, rng);
        CHECK(space.contains(g));
    }
    RngStream a(42), b(42);
    CHECK(random_genome(space, a) == random_genome(space, b));
}

TEST_CASE("random_genome marginals are centred") {
    const auto space = SearchSpace::cube(3, 0.0, 1.0);
    RngStream rng(7);
    std::vector<double> sum(3, 0.0);
    for (int i = 0; i < 10000; ++i) {
        const auto g = random_genome(space, rng);
        for (int j = 0; j < 3; ++j) sum[j] += g[j];
    }
    for (double s : sum) {
        CHECK(s / 10000.0 >= 0.45);
        CHECK(s / 10000.0 <= 0.55);
    }
}

TEST_CASE("clamp projects per coordinate") {
    CHECK(clamp(std::vector<double>{2.0}, SearchSpace::cube(1, -1, 1)) == Genome{1.0});
    CHECK(clamp(std::vector<double>{0.5}, SearchSpace::cube(1, -1, 1)) == Genome{0.5});
    CHECK(clamp(std::vector<double>{-7.0, 3.0}, SearchSpace::cube(2, -5, 5)) == Genome{-5.0, 3.0});
    CHECK_THROWS_AS(clamp(std::vector<double>{1.0, 2.0}, SearchSpace::cube(1, -1, 1)), std::invalid_argument);
}

TEST_CASE("clamp is idempotent") {
    const auto space = SearchSpace({-1.0, 0.0, 10.0}, {1.0, 5.0, 20.0});
    RngStream rng(3);
    for (int i = 0; i < 200; ++i) {
        Genome x{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(0, 30)};
        const auto once = clamp(x, space);
        CHECK(clamp(once, space) == once);
        CHECK(space.contains(once));
    }
}

TEST_CASE("rng streams") {
    RngStream a(5), b(5), c(6);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const double ua = a.uniform(), ub = b.uniform(), uc = c.uniform();
        CHECK(ua == ub);
        CHECK(ua >= 0.0);
        CHECK(ua < 1.0);
        differs |= ua != uc;
        CHECK(a.gaussian() == b.gaussian());
        c.gaussian();
        CHECK(a.index(7) == b.index(7));
        c.index(7);
    }
    CHECK(differs);
    CHECK_THROWS(a.index(0));
    CHECK_FALSE(a.bernoulli(0.0));
    CHECK(a.bernoulli(1.0));
}

TEST_CASE("unevaluated fitness is an explicit marker") {
    Individual ind{{1.0}, std::nullopt};
    CHECK_FALSE(ind.evaluated());
    CHECK_THROWS_AS(ind.f(), std::logic_error);
    ind.fitness = 0.0;
    CHECK(ind.f() == 0.0);
}

TEST_CASE("population best and mean") {
    Population p;
    p.members = {{{0.0}, 3.0}, {{1.0}, 1.0}, {{2.0}, 1.0}, {{3.0}, 5.0}};
    CHECK(p.best_index() == 1);
    CHECK(p.best_fitness() == 1.0);
    CHECK(p.mean_fitness() == 2.5);
}
