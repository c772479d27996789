#include "cnea/stats.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace cnea;

TEST_CASE("error_value") {
    CHECK(error_value(5.0, 0.0) == 5.0);
    CHECK(error_value(0.0, 0.0) == 0.0);
    CHECK(error_value(1e-9, 0.0) == 1e-9);
}

TEST_CASE("summarize examples") {
    const std::vector<double> e{3.0, 1.0, 2.0};
    const auto s = summarize(e);
    CHECK(s.sorted_errors == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(s.best() == 1.0);
    CHECK(s.worst() == 3.0);
    CHECK(s.median() == 2.0);
    CHECK(s.mean == 2.0);
    CHECK(s.std == doctest::Approx(1.0));

    const std::vector<double> same(30, 0.25);
    const auto t = summarize(same);
    for (double p : t.picks) CHECK(p == 0.25);
    CHECK(t.std == 0.0);

    CHECK(summarize(std::vector<double>{4.0}).std == 0.0);
    CHECK_THROWS_AS(summarize(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("rank picks") {
    CHECK(pick_ranks(30) == std::array<std::size_t, 5>{1, 7, 15, 22, 30});
    CHECK(pick_ranks(1) == std::array<std::size_t, 5>{1, 1, 1, 1, 1});
    CHECK(pick_ranks(100) == std::array<std::size_t, 5>{1, 24, 50, 74, 100});
    for (std::size_t n = 1; n < 200; ++n) {
        const auto r = pick_ranks(n);
        CHECK(r[0] == 1);
        CHECK(r[4] == n);
        for (std::size_t k = 1; k < 5; ++k) CHECK(r[k - 1] <= r[k]);
    }
    std::vector<double> e(30);
    for (std::size_t i = 0; i < 30; ++i) e[i] = static_cast<double>(30 - i);
    const auto s = summarize(e);
    CHECK(s.picks == std::array<double, 5>{1.0, 7.0, 15.0, 22.0, 30.0});
}

TEST_CASE("ordinals") {
    CHECK(ordinal(1) == "1st");
    CHECK(ordinal(2) == "2nd");
    CHECK(ordinal(3) == "3rd");
    CHECK(ordinal(7) == "7th");
    CHECK(ordinal(11) == "11th");
    CHECK(ordinal(12) == "12th");
    CHECK(ordinal(22) == "22nd");
    CHECK(ordinal(113) == "113th");
}

TEST_CASE("incomplete beta closed forms") {
    CHECK(incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(incomplete_beta(2.0, 1.0, 0.5) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(incomplete_beta(1.0, 3.0, 0.5) == doctest::Approx(1.0 - 0.125).epsilon(1e-12));
    CHECK(incomplete_beta(2.5, 4.0, 0.0) == 0.0);
    CHECK(incomplete_beta(2.5, 4.0, 1.0) == 1.0);
    // Symmetry I_x(a, b) = 1 - I_{1-x}(b, a).
    for (double x : {0.1, 0.4, 0.77})
        CHECK(incomplete_beta(3.5, 0.5, x) == doctest::Approx(1.0 - incomplete_beta(0.5, 3.5, 1.0 - x)).epsilon(1e-12));
}

TEST_CASE("t tail against trapezoid integration") {
    for (double df : {1.0, 10.0, 99.0})
        for (double t : {0.0, 1.0, 2.0, 5.0}) {
            CAPTURE(df);
            CAPTURE(t);
            CHECK(std::abs(student_t_two_tailed(t, df) - oracle::t_two_tailed(t, df)) < 1e-6);
            CHECK(student_t_two_tailed(-t, df) == student_t_two_tailed(t, df));
        }
    // Cauchy closed form for df = 1.
    CHECK(student_t_two_tailed(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(student_t_two_tailed(1.9842, 99.0) - 0.05) < 1e-3);
}

TEST_CASE("paired t-test examples") {
    const std::vector<double> a{1.0, 2.0, 3.5, 4.0};
    auto r = paired_ttest(a, a);
    CHECK(r.t_statistic == 0.0);
    CHECK(r.p_value == 1.0);
    CHECK(r.degrees_of_freedom == 3);

    const std::vector<double> b{0.0, 1.0, 2.5, 3.0};
    r = paired_ttest(a, b);
    CHECK(r.p_value == 0.0);
    CHECK(std::isinf(r.t_statistic));
    CHECK(r.t_statistic > 0.0);

    CHECK_THROWS_AS(paired_ttest(std::vector<double>{1.0}, std::vector<double>{2.0}), std::invalid_argument);
    CHECK_THROWS_AS(paired_ttest(a, std::vector<double>{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("paired t-test statistic matches a direct computation") {
    std::mt19937_64 gen(5);
    std::normal_distribution<double> nd(0.3, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a(100), b(100);
        for (auto& v : a) v = nd(gen);
        for (auto& v : b) v = nd(gen) * 0.5;
        double m = 0.0;
        for (int i = 0; i < 100; ++i) m += a[i] - b[i];
        m /= 100.0;
        double ss = 0.0;
        for (int i = 0; i < 100; ++i) ss += (a[i] - b[i] - m) * (a[i] - b[i] - m);
        const double t = m / (std::sqrt(ss / 99.0) / 10.0);
        const auto r = paired_ttest(a, b);
        CHECK(r.t_statistic == doctest::Approx(t).epsilon(1e-10));
        CHECK(r.degrees_of_freedom == 99);
        CHECK(std::abs(r.p_value - oracle::t_two_tailed(t, 99.0)) < 1e-6);

        const auto rev = paired_ttest(b, a);
        CHECK(rev.p_value == doctest::Approx(r.p_value).epsilon(1e-14));
        CHECK(rev.t_statistic == doctest::Approx(-r.t_statistic).epsilon(1e-14));
        CHECK(r.p_value >= 0.0);
        CHECK(r.p_value <= 1.0);
    }
}

TEST_CASE("larger mean difference never raises p") {
    const std::vector<double> noise{0.3, -0.1, 0.25, -0.4, 0.05, -0.2, 0.15, 0.0};
    double prev = 2.0;
    for (double shift = 0.0; shift < 1.0; shift += 0.05) {
        std::vector<double> a(noise.size()), b(noise.size(), 0.0);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = noise[i] + shift;
        const double p = paired_ttest(a, b).p_value;
        CHECK(p <= prev);
        prev = p;
    }
}
