#include "cnea/engines.hpp"
#include "cnea/operators.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace cnea;

TEST_CASE("binary tournament returns the better of its two picks") {
    const std::vector<Individual> pop{{{0.0}, 1.0}, {{1.0}, 9.0}, {{2.0}, 4.0}};
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        RngStream rng(seed), replay(seed);
        const auto a = replay.index(3), b = replay.index(3);
        const auto winner = binary_tournament(pop, rng);
        CHECK(pop[winner].f() == std::min(pop[a].f(), pop[b].f()));
    }
    CHECK_THROWS(binary_tournament(std::vector<Individual>{}, *std::make_unique<RngStream>(1)));
}

TEST_CASE("crossover weights are binary except one fraction") {
    RngStream rng(12);
    for (int t = 0; t < 200; ++t) {
        const auto w = crossover_weights(8, rng);
        const auto fractional = std::count_if(w.begin(), w.end(), [](double v) { return v != 0.0 && v != 1.0; });
        CHECK(fractional <= 1);
        for (double v : w) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("blend follows the weight scheme") {
    const std::vector<double> a{0.0, 0.0}, b{2.0, 2.0};
    CHECK(blend(a, b, std::vector<double>{0.0, 0.5}) == Genome{2.0, 1.0});
    CHECK(blend(a, b, std::vector<double>{0.5, 1.0}) == Genome{1.0, 0.0});
    CHECK_THROWS(blend(a, b, std::vector<double>{1.0}));
}

TEST_CASE("crossover of a genome with itself is that genome") {
    RngStream rng(3);
    const std::vector<double> a{1.5, -2.0, 3.25};
    for (int t = 0; t < 50; ++t) CHECK(arithmetic_crossover(a, a, rng) == Genome(a.begin(), a.end()));
}

TEST_CASE("gaussian mutation") {
    const auto space = SearchSpace::cube(3, -1.0, 1.0);
    RngStream rng(4);
    const std::vector<double> x{0.1, 0.2, 0.3};
    CHECK(gaussian_mutate(x, 0.0, 1.0, space, rng) == Genome(x.begin(), x.end()));
    CHECK(gaussian_mutate(x, 1.0, 0.0, space, rng) == Genome(x.begin(), x.end()));
    for (int t = 0; t < 100; ++t) {
        const auto y = gaussian_mutate(x, 25.0, 1.0, space, rng);
        CHECK(space.contains(y));
    }
    CHECK_THROWS(gaussian_mutate(x, -1.0, 1.0, space, rng));
}

TEST_CASE("power law support and quantiles") {
    const PowerLaw law;
    CHECK(law.quantile(10.0, 0.0) == 10.0);
    CHECK(law.quantile(10.0, 1.0) == 10000.0);
    CHECK(law.quantile(10.0, 1.0 - 1e-12) == doctest::Approx(10000.0).epsilon(1e-6));
    // CDF(2 alpha) = (1 - 1/2) / (1 - 1/1000)
    CHECK(law.cdf(10.0, 20.0) == doctest::Approx(0.5 / 0.999).epsilon(1e-14));
    for (double p : {0.1, 0.3, 0.5, 0.9, 0.999})
        CHECK(law.cdf(3.0, law.quantile(3.0, p)) == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("pow_sample empirical behaviour") {
    RngStream rng(99);
    std::vector<double> draws(10000);
    for (auto& d : draws) d = pow_sample(10.0, rng);
    std::size_t below = 0;
    for (double d : draws) {
        CHECK(d >= 10.0);
        CHECK(d <= 10000.0);
        if (d < 20.0) ++below;
    }
    const double frac = static_cast<double>(below) / 10000.0;
    CHECK(frac >= 0.47);
    CHECK(frac <= 0.53);
    std::nth_element(draws.begin(), draws.begin() + 5000, draws.end());
    CHECK(draws[5000] >= 10.0);
    CHECK(draws[5000] <= 30.0);
}

TEST_CASE("standard EA variance schedule") {
    CHECK(sea_variance(SeaVariance::printed, 0) == 2.0);
    CHECK(sea_variance(SeaVariance::printed, 3) == 3.0);
    CHECK(sea_variance(SeaVariance::annealed, 3) == 0.5);
}
